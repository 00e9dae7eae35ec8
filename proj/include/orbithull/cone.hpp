/**
 * Polyhedral cones: double description, facets from generators, the
 * recession cone C_T = t^R ∩ (-R^n_+) and its idempotent semigroup I_T.
 */
#pragma once

#include <cstddef>
#include <vector>

#include "orbithull/ratlin.hpp"

namespace orbithull {

/// Extreme rays (primitive integer vectors) of the pointed cone {w : <a_i, w> <= 0}; rank(a) must equal dim.
std::vector<ZVector> extreme_rays(const QMatrix& constraints, std::size_t dim);

struct ConeHRep {
    std::vector<ZVector> facets;  // <a, x> <= 0 on the cone, each a facet
    QMatrix lineality;            // <l, x> = 0 on the cone
};

/// H-representation of cone(generators) in R^dim.
ConeHRep cone_facets(const QMatrix& generators, std::size_t dim);

/// Indices of generators spanning extreme rays of cone(generators), given its H-representation.
std::vector<std::size_t> extreme_generators(const QMatrix& generators, const ConeHRep& h, std::size_t dim);

/**
 * Cone inside a rational subspace, in both representations.
 * Halfspaces and equalities are vectors of the ambient subspace itself.
 */
struct PolyCone {
    RationalSubspace ambient;
    std::vector<ZVector> rays;
    QMatrix halfspaces;  // <x, a> <= 0
    QMatrix equalities;  // <x, a> = 0

    std::size_t dim() const;
    bool is_zero() const { return rays.empty(); }
    /// Exact test of x against the H-representation (x assumed in ambient).
    bool contains(const QVector& x) const;
};

PolyCone compute_C_T(const TorusLattice& t);

struct Face {
    std::vector<std::size_t> rays;  // indices into PolyCone::rays
    std::size_t dim = 0;
};

/// All faces, {0} and the cone itself included, ordered by dimension then ray set.
std::vector<Face> face_lattice(const PolyCone& c);

using Idempotent = std::vector<int>;

struct IdempotentSet {
    std::vector<Idempotent> elements;  // aligned with faces
    std::vector<Face> faces;

    bool contains(const Idempotent& e) const;
};

IdempotentSet idempotents(const PolyCone& c);

}  // namespace orbithull
