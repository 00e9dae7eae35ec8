#include <algorithm>
#include <cmath>
#include <numbers>

#include "orbithull/errors.hpp"
#include "orbithull/hull.hpp"

namespace orbithull {

CVector StripDescriptor::at(std::complex<double> z) const {
    CVector out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) out[k] = std::exp(z * xi[k]) * v[k];
    return out;
}

StripDescriptor analytic_strip(const TorusLattice& t, const CVector& v, const CVector& u, double tol) {
    const std::size_t n = t.n();
    if (v.size() != n || u.size() != n) throw PreconditionError("analytic_strip: dimension mismatch");
    for (std::size_t k = 0; k < n; ++k) {
        if (v[k] == 0.0 || u[k] == 0.0) throw PreconditionError("v must lie in (ℂ*)ⁿ");
    }
    StripDescriptor s;
    s.v = v;
    s.u = u;
    s.xi.resize(n);
    std::vector<double> th(n);
    for (std::size_t k = 0; k < n; ++k) {
        s.xi[k] = std::log(std::abs(u[k])) - std::log(std::abs(v[k]));
        th[k] = std::arg(u[k]) - std::arg(v[k]);
    }
    if (!subspace_contains(t.tangent(), s.xi, tol)) throw PreconditionError("u is not on T^R v: log-ratio outside t^R");
    // u = exp(xi) v requires equal phases up to 2 pi Z
    for (std::size_t k = 0; k < n; ++k) {
        double r = th[k] / (2.0 * std::numbers::pi);
        if (std::abs(r - std::round(r)) * 2.0 * std::numbers::pi > tol) {
            throw PreconditionError("u is not on T^R v: phase of coordinate " + std::to_string(k + 1) + " differs");
        }
    }

    double amax = 0.0;
    std::size_t j = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (std::abs(s.xi[k]) > amax) {
            amax = std::abs(s.xi[k]);
            j = k;
        }
    }
    if (amax <= tol) {
        s.degenerate = true;
        return s;
    }

    // xi = alpha m with m primitive integer iff the ratios xi_k / xi_j are rational
    QVector ratios(n);
    for (std::size_t k = 0; k < n; ++k) {
        double r = s.xi[k] / s.xi[j];
        ratios[k] = best_rational(r, strip_max_denominator);
        if (std::abs(ratios[k].convert_to<double>() - r) * amax > tol) return s;
    }
    ZVector m = primitive(ratios);
    std::size_t nz = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (m[k] != 0) {
            nz = k;
            break;
        }
    }
    double alpha = s.xi[nz] / m[nz].convert_to<double>();
    if (alpha < 0) {
        alpha = -alpha;
        for (auto& e : m) e = -e;
    }
    std::vector<long long> dir;
    for (const auto& e : m) dir.push_back(e.convert_to<long long>());
    s.periodic = true;
    s.direction = dir;
    s.period = 2.0 * std::numbers::pi / alpha;
    return s;
}

}  // namespace orbithull
