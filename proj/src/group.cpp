#include "orbithull/group.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "orbithull/errors.hpp"
#include "orbithull/hull.hpp"

namespace orbithull {

namespace {

Rational reduce_turns(const Rational& q) {
    Integer fl = numerator(q) / denominator(q);
    Rational r = q - Rational(fl);
    while (r < 0) r += 1;
    while (r >= 1) r -= 1;
    return r;
}

double reduce_turns(double x) {
    double r = x - std::floor(x);
    return r >= 1.0 ? 0.0 : r;
}

}  // namespace

TwistAngle TwistAngle::exact(const Rational& turns) {
    TwistAngle a;
    a.exact_ = true;
    a.q_ = reduce_turns(turns);
    a.turns_ = a.q_.convert_to<double>();
    return a;
}

TwistAngle TwistAngle::from_turns(double turns) {
    double r = reduce_turns(turns);
    Rational q = best_rational(r, 720);
    if (std::abs(q.convert_to<double>() - r) <= 1e-12) return exact(q);
    TwistAngle a;
    a.exact_ = false;
    a.turns_ = r;
    return a;
}

double TwistAngle::radians() const { return 2.0 * std::numbers::pi * turns_; }

TwistAngle TwistAngle::operator+(const TwistAngle& o) const {
    if (exact_ && o.exact_) return exact(q_ + o.q_);
    return from_turns(turns_ + o.turns_);
}

TwistAngle TwistAngle::operator-() const {
    if (exact_) return exact(-q_);
    return from_turns(-turns_);
}

bool TwistAngle::equals(const TwistAngle& o, double tol) const {
    if (exact_ && o.exact_) return q_ == o.q_;
    double d = std::abs(turns_ - o.turns_);
    d = std::min(d, 1.0 - d);
    return d <= tol;
}

// ---------------------------------------------------------------------------

MonomialElement::MonomialElement(std::vector<std::size_t> perm, std::vector<TwistAngle> twist)
    : perm_(std::move(perm)), inv_(perm_.size(), perm_.size()), twist_(std::move(twist)) {
    const std::size_t n = perm_.size();
    if (twist_.size() != n) throw ParseError("twist length does not match permutation length");
    for (std::size_t k = 0; k < n; ++k) {
        if (perm_[k] >= n || inv_[perm_[k]] != n) throw ParseError("not a permutation");
        inv_[perm_[k]] = k;
    }
}

MonomialElement::MonomialElement(std::vector<std::size_t> perm)
    : MonomialElement(perm, std::vector<TwistAngle>(perm.size())) {}

MonomialElement MonomialElement::identity(std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    return MonomialElement(p);
}

CVector MonomialElement::apply(const CVector& z) const {
    if (z.size() != n()) throw std::invalid_argument("apply: dimension mismatch");
    CVector out(n());
    for (std::size_t k = 0; k < n(); ++k) {
        out[k] = std::polar(1.0, twist_[k].radians()) * z[inv_[k]];
        if (twist_[k].is_exact() && twist_[k].exact_turns().is_zero()) out[k] = z[inv_[k]];
    }
    return out;
}

QVector MonomialElement::act(const QVector& x) const {
    QVector out(n());
    for (std::size_t k = 0; k < n(); ++k) out[k] = x[inv_[k]];
    return out;
}

std::vector<double> MonomialElement::act(const std::vector<double>& x) const {
    std::vector<double> out(n());
    for (std::size_t k = 0; k < n(); ++k) out[k] = x[inv_[k]];
    return out;
}

MonomialElement MonomialElement::compose(const MonomialElement& h) const {
    if (h.n() != n()) throw std::invalid_argument("compose: dimension mismatch");
    std::vector<std::size_t> p(n());
    std::vector<TwistAngle> tw(n());
    for (std::size_t k = 0; k < n(); ++k) {
        p[k] = perm_[h.perm_[k]];
        tw[k] = twist_[k] + h.twist_[inv_[k]];
    }
    return MonomialElement(p, tw);
}

MonomialElement MonomialElement::inverse() const {
    // g^{-1} z: (g^{-1} z)_k = conj(twist_{perm(k)}) z_{perm(k)}
    std::vector<TwistAngle> tw(n());
    for (std::size_t k = 0; k < n(); ++k) tw[k] = -twist_[perm_[k]];
    return MonomialElement(inv_, tw);
}

bool MonomialElement::equals(const MonomialElement& o, double tol) const {
    if (perm_ != o.perm_) return false;
    for (std::size_t k = 0; k < n(); ++k) {
        if (!twist_[k].equals(o.twist_[k], tol)) return false;
    }
    return true;
}

bool MonomialElement::is_identity(double tol) const { return equals(identity(n()), tol); }

// ---------------------------------------------------------------------------

MonomialGroup::MonomialGroup(std::size_t n, std::vector<MonomialElement> generators, std::size_t order_bound)
    : n_(n), generators_(std::move(generators)) {
    for (const auto& g : generators_) {
        if (g.n() != n) throw ParseError("generator acts on " + std::to_string(g.n()) + " coordinates, expected " +
                                         std::to_string(n));
    }
    elements_.push_back(MonomialElement::identity(n));
    by_perm_[elements_[0].perm()].push_back(0);
    for (std::size_t head = 0; head < elements_.size(); ++head) {
        for (const auto& g : generators_) {
            MonomialElement prod = g.compose(elements_[head]);
            if (find(prod) != elements_.size()) continue;
            if (elements_.size() >= order_bound) {
                throw PreconditionError("group order exceeds bound " + std::to_string(order_bound));
            }
            by_perm_[prod.perm()].push_back(elements_.size());
            elements_.push_back(std::move(prod));
        }
    }
}

MonomialGroup MonomialGroup::trivial(std::size_t n) { return MonomialGroup(n, {}); }

MonomialGroup MonomialGroup::from_permutations(std::size_t n, const std::vector<std::vector<std::size_t>>& perms) {
    std::vector<MonomialElement> gens;
    for (const auto& p : perms) gens.emplace_back(p);
    return MonomialGroup(n, gens);
}

MonomialGroup MonomialGroup::symmetric(std::size_t n) {
    std::vector<std::vector<std::size_t>> gens;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::vector<std::size_t> p(n);
        std::iota(p.begin(), p.end(), 0);
        std::swap(p[k], p[k + 1]);
        gens.push_back(p);
    }
    return from_permutations(n, gens);
}

MonomialGroup MonomialGroup::cyclic(std::size_t n) {
    std::vector<std::size_t> p(n);
    for (std::size_t k = 0; k < n; ++k) p[k] = (k + 1) % n;
    return from_permutations(n, {p});
}

std::size_t MonomialGroup::find(const MonomialElement& g) const {
    auto it = by_perm_.find(g.perm());
    if (it == by_perm_.end()) return elements_.size();
    for (auto i : it->second) {
        if (elements_[i].equals(g)) return i;
    }
    return elements_.size();
}

std::vector<std::vector<std::size_t>> MonomialGroup::permutations() const {
    std::vector<std::vector<std::size_t>> out;
    for (const auto& [p, idx] : by_perm_) out.push_back(p);
    return out;
}

// ---------------------------------------------------------------------------

Partition orbit_partition(const MonomialGroup& f) {
    const std::size_t n = f.n();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& g : f.generators()) {
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t a = root(k), b = root(g.perm()[k]);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t k = 0; k < n; ++k) groups[root(k)].push_back(k);
    Partition out;
    for (auto& [r, ks] : groups) out.push_back(std::move(ks));
    return out;
}

bool full_symmetric_on_orbits(const MonomialGroup& f) {
    const Partition orbits = orbit_partition(f);
    auto perms = f.permutations();
    std::set<std::vector<std::size_t>> perm_set(perms.begin(), perms.end());
    // |F| = prod |K|! compared in floating point only once it is small enough to matter
    long double expected = 1.0L;
    for (const auto& k : orbits) {
        for (std::size_t i = 2; i <= k.size(); ++i) expected *= static_cast<long double>(i);
    }
    if (expected != static_cast<long double>(perm_set.size())) return false;
    for (const auto& k : orbits) {
        for (std::size_t i = 0; i + 1 < k.size(); ++i) {
            std::vector<std::size_t> t(f.n());
            std::iota(t.begin(), t.end(), 0);
            std::swap(t[k[i]], t[k[i + 1]]);
            if (!perm_set.count(t)) return false;
        }
    }
    return true;
}

std::size_t reflection_rank(const MonomialElement& f, const RationalSubspace& s) {
    if (f.n() != s.n()) throw std::invalid_argument("reflection_rank: dimension mismatch");
    QMatrix diffs;
    for (const auto& b : s.basis()) {
        QVector fb = f.act(b);
        if (!s.contains(fb)) throw PreconditionError("reflection_rank: element does not preserve the subspace");
        QVector d(b.size());
        for (std::size_t i = 0; i < b.size(); ++i) d[i] = b[i] - fb[i];
        diffs.push_back(std::move(d));
    }
    return rank(diffs, s.n());
}

bool normalizes_torus(const MonomialGroup& f, const TorusLattice& t) {
    for (const auto& g : f.generators()) {
        for (const auto& b : t.tangent().basis()) {
            if (!t.tangent().contains(g.act(b))) return false;
        }
    }
    return true;
}

FixedPointNormalization normalize_to_fixed_point(const MonomialGroup& f, const TorusLattice& t, const CVector& v,
                                                 double tol) {
    const std::size_t n = t.n();
    if (v.size() != n || f.n() != n) throw PreconditionError("normalize_to_fixed_point: dimension mismatch");
    std::vector<bool> ok = check_incor(t, f, v, tol);
    for (std::size_t i = 0; i < ok.size(); ++i) {
        if (!ok[i]) {
            throw IncorViolation(i, "generator " + std::to_string(i + 1) + " moves v off its complex torus orbit");
        }
    }
    std::vector<double> logv(n);
    for (std::size_t k = 0; k < n; ++k) logv[k] = std::log(std::abs(v[k]));

    std::vector<double> bary(n, 0.0);
    for (const auto& g : f.elements()) {
        std::vector<double> x = g.act(logv);
        for (std::size_t k = 0; k < n; ++k) x[k] -= logv[k];
        x = t.tangent().project(x);
        for (std::size_t k = 0; k < n; ++k) bary[k] += x[k];
    }
    CVector u(n);
    for (std::size_t k = 0; k < n; ++k) {
        bary[k] /= static_cast<double>(f.order());
        u[k] = v[k] * std::exp(bary[k]);
    }

    std::vector<MonomialElement> gens;
    for (const auto& g : f.generators()) {
        std::vector<TwistAngle> tw(n);
        for (std::size_t k = 0; k < n; ++k) {
            double d = std::arg(u[k]) - std::arg(u[g.preimage(k)]);
            tw[k] = TwistAngle::from_turns(d / (2.0 * std::numbers::pi));
        }
        gens.emplace_back(g.perm(), tw);
    }
    return FixedPointNormalization{MonomialGroup(n, gens), u};
}

}  // namespace orbithull
