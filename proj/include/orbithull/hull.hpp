/**
 * Polynomial hulls of orbits F T v with F v inside the complex torus orbit of v.
 *
 * Log-coordinates are taken relative to v: x = log|z| - log|v|.  Facet
 * inequalities read <log|z|, s> <= offset with s >= 0, i.e. |z^s| <= e^offset.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "orbithull/cone.hpp"
#include "orbithull/group.hpp"
#include "orbithull/ratlin.hpp"

namespace orbithull {

struct HullOptions {
    double tol = 1e-9;
    long long max_denominator = 1000000;
};

struct Facet {
    std::vector<double> normal;                          // s, entries >= 0
    std::optional<std::vector<long long>> exact_normal;  // primitive integer s when the direction is rational
    double offset = 0.0;                                 // sup of <log|z|, s> over the hull
    double relative_offset = 0.0;                        // c_s = offset - <log|v|, s>
    bool equality = false;                               // half of an equality pair
};

enum class Status { Inside, Boundary, Outside };
std::string to_string(Status s);

/**
 * Polynomial certificate p with |p(z)| > sup over the hull of |p|.
 * Monomial: p = z^exponent.  Binomial: p = z^plus v^minus - z^minus v^plus,
 * which vanishes on the closure of the complex torus orbit.
 */
struct Certificate {
    enum class Kind { Monomial, Binomial };
    Kind kind = Kind::Monomial;
    std::vector<long long> exponent;
    std::vector<long long> plus;
    std::vector<long long> minus;
    double log_value = 0.0;
    double log_sup = -std::numeric_limits<double>::infinity();

    double log_gap() const { return log_value - log_sup; }
    double value() const;
    double sup() const;
    std::string polynomial() const;
};

struct MembershipVerdict {
    Status status = Status::Inside;
    double tolerance = 0.0;
    /// Largest facet violation (<log|z|, s> - offset) / |s|_2; negative means strict.
    double max_violation = -std::numeric_limits<double>::infinity();
    std::optional<Certificate> certificate;
    std::optional<std::size_t> facet;  // most violated (Outside) or tight (Boundary) facet
    std::string reason;                // facet, torus, phase, support
};

class OrbitHull {
public:
    const TorusLattice& torus() const { return torus_; }
    const MonomialGroup& group() const { return group_; }
    const CVector& v() const { return v_; }
    std::size_t n() const { return torus_.n(); }
    const std::vector<double>& log_v() const { return logv_; }
    const std::vector<bool>& support() const { return vsupp_; }

    /// X, relative to v.
    const std::vector<std::vector<double>>& points() const { return points_; }
    const std::vector<std::size_t>& q_vertices() const { return q_vertices_; }
    const std::vector<std::size_t>& p_vertices() const { return p_vertices_; }
    std::vector<std::vector<double>> vertices_log() const;
    const PolyCone& recession() const { return cone_; }
    const IdempotentSet& idempotents() const { return idempotents_; }
    const std::vector<Facet>& facets() const { return facets_; }
    /// Largest floating-point slack at a tight (vertex, facet) pair of the exact hull.
    double tightness_defect() const { return tightness_defect_; }

    std::vector<Facet>& mutable_facets() { return facets_; }

private:
    friend OrbitHull assemble_hull(const TorusLattice&, const MonomialGroup&, const CVector&, const QMatrix&,
                                   const std::vector<std::vector<double>>&, const HullOptions&);
    friend OrbitHull hull_from_parts(const TorusLattice&, const MonomialGroup&, const CVector&,
                                     std::vector<std::vector<double>>, std::vector<Facet>, std::vector<ZVector>);

    TorusLattice torus_;
    MonomialGroup group_;
    CVector v_;
    std::vector<double> logv_;
    std::vector<bool> vsupp_;
    std::vector<std::vector<double>> points_;
    std::vector<std::size_t> q_vertices_;
    std::vector<std::size_t> p_vertices_;
    PolyCone cone_;
    IdempotentSet idempotents_;
    std::vector<Facet> facets_;
    double tightness_defect_ = 0.0;
};

/// Per generator: whether f v lies in T^C v.
std::vector<bool> check_incor(const TorusLattice& t, const MonomialGroup& f, const CVector& v, double tol = 1e-9);

OrbitHull build_hull(const TorusLattice& t, const MonomialGroup& f, const CVector& v, const HullOptions& opt = {});

/// Hull of T v; zeros in v are allowed.
OrbitHull hull_T_orbit(const TorusLattice& t, const CVector& v, const HullOptions& opt = {});

/**
 * Hull from explicit log-points (relative to v, inside t^R).  exact_points
 * drive the facet enumeration, float_points (same order) the offsets.
 */
OrbitHull assemble_hull(const TorusLattice& t, const MonomialGroup& ftilde, const CVector& v,
                        const QMatrix& exact_points, const std::vector<std::vector<double>>& float_points,
                        const HullOptions& opt = {});

/// Rebuilds a queryable hull from serialized parts (points are Q_X vertices).
OrbitHull hull_from_parts(const TorusLattice& t, const MonomialGroup& ftilde, const CVector& v,
                          std::vector<std::vector<double>> points, std::vector<Facet> facets,
                          std::vector<ZVector> rays);

MembershipVerdict membership(const OrbitHull& h, const CVector& z, double tol = 1e-9);

/// Integer monomial certificate for z outside h; throws CertificateError when none is found.
Certificate separating_certificate(const OrbitHull& h, const CVector& z, const HullOptions& opt = {});

struct StripDescriptor {
    std::vector<double> xi;
    CVector v;
    CVector u;
    bool degenerate = false;  // xi = 0
    bool periodic = false;
    std::optional<double> period;
    std::optional<std::vector<long long>> direction;  // primitive integer m with xi = (2 pi / period) m

    /// lambda(z) = exp(z xi) v
    CVector at(std::complex<double> z) const;
};

/// Largest denominator accepted when testing xi for a rational direction.
inline constexpr long long strip_max_denominator = 1000;

StripDescriptor analytic_strip(const TorusLattice& t, const CVector& v, const CVector& u, double tol = 1e-9);

}  // namespace orbithull
