/**
 * JSON forms of the library types.  Keys are emitted sorted; permutation
 * images are 1-based; exact rationals are strings such as "-3/2".
 */
#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Dense>
#include "json.hpp"

#include "orbithull/classify.hpp"
#include "orbithull/cone.hpp"
#include "orbithull/group.hpp"
#include "orbithull/hull.hpp"
#include "orbithull/oracle.hpp"
#include "orbithull/ratlin.hpp"

namespace orbithull {

using nlohmann::json;

std::string fraction_string(const Rational& q);
/// Accepts "p", "p/q" or a JSON number (converted exactly).
Rational parse_fraction(const json& j);

json to_json(const TorusLattice& t);
TorusLattice lattice_from_json(const json& j);

json to_json(const MonomialGroup& f);
/// Missing "generators" gives the trivial group on n coordinates.
MonomialGroup group_from_json(const json& j, std::size_t n);

json to_json(const PolyCone& c);
json to_json(const IdempotentSet& s);

json to_json(const CVector& z);
CVector cvector_from_json(const json& j);
Eigen::MatrixXcd matrix_from_json(const json& j);

json to_json(const Facet& f);
json to_json(const OrbitHull& h);
OrbitHull hull_from_json(const json& j);

json to_json(const Certificate& c);
json to_json(const MembershipVerdict& v);
json to_json(const StripDescriptor& s);
json to_json(const PairReport& r);
json to_json(const VerificationReport& r);

struct ProblemSpec {
    TorusLattice lattice;
    MonomialGroup group;
    CVector v;
    HullOptions options;
    std::uint64_t seed = 42;
    json raw;
};

/// {"lattice": ..., "group": ..., "v": [[re, im], ...], "options": {...}}
ProblemSpec problem_from_json(const json& j);

/// Parses text, turning every JSON error into ParseError.
json parse_json_text(const std::string& text);

}  // namespace orbithull
