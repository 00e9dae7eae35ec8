#pragma once

#include <cstddef>
#include <vector>

#include "orbithull/hull.hpp"

namespace orbithull::detail {

/// p = z^{a+} v^{a-} - z^{a-} v^{a+}
Certificate binomial_certificate(const ZVector& a, const CVector& z, const CVector& v);

/// |z_k| > 0 while z_k vanishes on the hull.
Certificate coordinate_certificate(std::size_t k, const CVector& z);

/// Monomial separator supported on the coordinates `active`.
Certificate monomial_certificate(const OrbitHull& h, const CVector& z, const std::vector<std::size_t>& active,
                                 const HullOptions& opt);

/// Binomial separator for a support pattern no idempotent realizes.
Certificate support_certificate(const OrbitHull& h, const CVector& z, const std::vector<std::size_t>& active);

/// Lattice of t restricted to the given coordinates, saturated in Z^|active|.
TorusLattice restrict_lattice(const TorusLattice& t, const std::vector<std::size_t>& active);

}  // namespace orbithull::detail
