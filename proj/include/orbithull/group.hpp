/**
 * Finite groups of twisted coordinate permutations acting on C^n.
 *
 * Indices are 0-based internally; JSON uses 1-based permutation images.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <vector>

#include "orbithull/ratlin.hpp"

namespace orbithull {

using CVector = std::vector<std::complex<double>>;

/// Angle measured in turns (multiples of 2 pi), reduced to [0, 1).
class TwistAngle {
public:
    TwistAngle() = default;
    static TwistAngle exact(const Rational& turns);
    /// Snaps to a rational with denominator <= 720 when within 1e-12.
    static TwistAngle from_turns(double turns);

    bool is_exact() const { return exact_; }
    const Rational& exact_turns() const { return q_; }
    double turns() const { return turns_; }
    double radians() const;

    TwistAngle operator+(const TwistAngle& o) const;
    TwistAngle operator-() const;
    bool equals(const TwistAngle& o, double tol = 1e-10) const;

private:
    bool exact_ = true;
    Rational q_ = 0;
    double turns_ = 0.0;
};

/**
 * (g z)_k = twist_k * z_{perm^{-1}(k)}; perm[k] is the image of k.
 */
class MonomialElement {
public:
    MonomialElement() = default;
    MonomialElement(std::vector<std::size_t> perm, std::vector<TwistAngle> twist);
    explicit MonomialElement(std::vector<std::size_t> perm);
    static MonomialElement identity(std::size_t n);

    std::size_t n() const { return perm_.size(); }
    const std::vector<std::size_t>& perm() const { return perm_; }
    const std::vector<TwistAngle>& twist() const { return twist_; }
    std::size_t preimage(std::size_t k) const { return inv_[k]; }

    CVector apply(const CVector& z) const;
    /// Linear action on real log-coordinates: (pi x)_k = x_{perm^{-1}(k)}.
    QVector act(const QVector& x) const;
    std::vector<double> act(const std::vector<double>& x) const;

    /// this o h
    MonomialElement compose(const MonomialElement& h) const;
    MonomialElement inverse() const;
    bool equals(const MonomialElement& o, double tol = 1e-10) const;
    bool is_identity(double tol = 1e-10) const;

private:
    std::vector<std::size_t> perm_;
    std::vector<std::size_t> inv_;
    std::vector<TwistAngle> twist_;
};

class MonomialGroup {
public:
    static constexpr std::size_t default_order_bound = 3628800;  // 10!

    MonomialGroup() = default;
    MonomialGroup(std::size_t n, std::vector<MonomialElement> generators,
                  std::size_t order_bound = default_order_bound);
    static MonomialGroup trivial(std::size_t n);
    static MonomialGroup from_permutations(std::size_t n, const std::vector<std::vector<std::size_t>>& perms);
    static MonomialGroup symmetric(std::size_t n);
    static MonomialGroup cyclic(std::size_t n);

    std::size_t n() const { return n_; }
    const std::vector<MonomialElement>& generators() const { return generators_; }
    /// All elements, identity first.
    const std::vector<MonomialElement>& elements() const { return elements_; }
    std::size_t order() const { return elements_.size(); }
    /// Index into elements(), or order() when absent.
    std::size_t find(const MonomialElement& g) const;
    /// Distinct underlying permutations.
    std::vector<std::vector<std::size_t>> permutations() const;

private:
    std::size_t n_ = 0;
    std::vector<MonomialElement> generators_;
    std::vector<MonomialElement> elements_;
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> by_perm_;
};

using Partition = std::vector<std::vector<std::size_t>>;

Partition orbit_partition(const MonomialGroup& f);
bool full_symmetric_on_orbits(const MonomialGroup& f);
std::size_t reflection_rank(const MonomialElement& f, const RationalSubspace& s);

struct FixedPointNormalization {
    MonomialGroup group;  // {t_f f}
    CVector u;            // F-fixed point of T^C v
};

FixedPointNormalization normalize_to_fixed_point(const MonomialGroup& f, const TorusLattice& t, const CVector& v,
                                                 double tol = 1e-9);

/// Checks that each generator maps t^R into itself (F normalizes T).
bool normalizes_torus(const MonomialGroup& f, const TorusLattice& t);

}  // namespace orbithull
