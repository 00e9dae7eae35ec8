/**
 * Structural tests on a pair (T, F): generic connectedness and closedness of
 * complex orbits, per-orbit type, product structure, and the canonical
 * lattice construction from a finite set of dual lattice points.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orbithull/group.hpp"
#include "orbithull/ratlin.hpp"

namespace orbithull {

enum class PairType { A, B, ProductMixed, NotApplicable };
std::string to_string(PairType t);

struct PairReport {
    bool generically_connected = false;
    bool generically_closed = false;
    Partition orbit_partition;
    std::vector<std::string> orbit_types;  // "A", "B" or "other", aligned with orbit_partition
    PairType type = PairType::NotApplicable;
    bool standard_product = false;
    std::size_t centralizer_dim = 0;  // dim C(K)^F, the number of coordinate orbits
};

/// span(t^R, orbit indicators) = R^n; cross-checked against the fixed space of the generators.
bool generically_connected(const TorusLattice& t, const MonomialGroup& f);

/// C_T = {0}; cross-checked by an exact LP for a nonzero F-invariant x >= 0 in t^R.
bool generically_closed(const TorusLattice& t, const MonomialGroup& f);

PairReport classify_type(const TorusLattice& t, const MonomialGroup& f);

/// A/B on every orbit, F the full symmetric group on each orbit, and T the product of its orbit restrictions.
bool is_standard_product(const TorusLattice& t, const MonomialGroup& f);

struct MaicoInput {
    std::size_t t_dim = 0;
    QMatrix lattice;  // rows: basis of L in R^d
    QMatrix points;   // rows: K, in the coordinates dual to R^d
    std::vector<QMatrix> generators;  // d x d matrices acting on those coordinates: q -> M q
};

struct MaicoResult {
    TorusLattice torus;
    MonomialGroup group;
    std::string v_condition;
};

MaicoResult construct_maico(const MaicoInput& input);

/// Hulls at random generic v agree on their facet normals (projected to t^R, unit length).
bool normals_rigidity_probe(const TorusLattice& t, const MonomialGroup& f, int trials = 5, std::uint64_t seed = 42);

}  // namespace orbithull
