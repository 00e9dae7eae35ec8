#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "hull_internal.hpp"
#include "orbithull/errors.hpp"
#include "orbithull/hull.hpp"
#include "orbithull/lp.hpp"

namespace orbithull {

namespace {

std::string monomial_string(const std::vector<long long>& e, char var) {
    std::string out;
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0) continue;
        if (!out.empty()) out += "*";
        out += var + std::to_string(k + 1) + "^" + std::to_string(e[k]);
    }
    return out.empty() ? "1" : out;
}

std::string join(const std::string& a, const std::string& b) {
    if (a == "1") return b;
    if (b == "1") return a;
    return a + "*" + b;
}

/// log|z^e| with log 0 = -inf for positive exponents.
double log_monomial(const CVector& z, const std::vector<long long>& e) {
    double s = 0.0;
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0) continue;
        if (z[k] == 0.0) return -std::numeric_limits<double>::infinity();
        s += static_cast<double>(e[k]) * std::log(std::abs(z[k]));
    }
    return s;
}

std::complex<double> eval_monomial(const CVector& z, const std::vector<long long>& e) {
    std::complex<double> p = 1.0;
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] != 0) p *= std::pow(z[k], static_cast<double>(e[k]));
    }
    return p;
}

}  // namespace

double Certificate::value() const { return std::exp(log_value); }

double Certificate::sup() const { return std::isinf(log_sup) && log_sup < 0 ? 0.0 : std::exp(log_sup); }

std::string Certificate::polynomial() const {
    if (kind == Kind::Monomial) return monomial_string(exponent, 'z');
    return join(monomial_string(plus, 'z'), monomial_string(minus, 'v')) + " - " +
           join(monomial_string(minus, 'z'), monomial_string(plus, 'v'));
}

namespace detail {

Certificate binomial_certificate(const ZVector& a, const CVector& z, const CVector& v) {
    Certificate c;
    c.kind = Certificate::Kind::Binomial;
    c.plus.assign(a.size(), 0);
    c.minus.assign(a.size(), 0);
    for (std::size_t k = 0; k < a.size(); ++k) {
        long long x = a[k].convert_to<long long>();
        if (x > 0) c.plus[k] = x;
        if (x < 0) c.minus[k] = -x;
    }
    std::complex<double> p = eval_monomial(z, c.plus) * eval_monomial(v, c.minus) -
                             eval_monomial(z, c.minus) * eval_monomial(v, c.plus);
    c.log_value = std::abs(p) > 0.0 ? std::log(std::abs(p)) : -std::numeric_limits<double>::infinity();
    c.log_sup = -std::numeric_limits<double>::infinity();
    return c;
}

Certificate coordinate_certificate(std::size_t k, const CVector& z) {
    Certificate c;
    c.kind = Certificate::Kind::Monomial;
    c.exponent.assign(z.size(), 0);
    c.exponent[k] = 1;
    c.log_value = std::log(std::abs(z[k]));
    c.log_sup = -std::numeric_limits<double>::infinity();
    return c;
}

Certificate support_certificate(const OrbitHull& h, const CVector& z, const std::vector<std::size_t>& active) {
    const std::size_t n = h.n();
    const TorusLattice& t = h.torus();
    std::vector<bool> on(n, false);
    for (auto k : active) on[k] = true;

    // a in t^perp, a = 0 off supp(v), a >= 0 on the vanishing part with sum 1 there, free on supp(z)
    LinearProgram<Rational> lp;
    lp.num_vars = n;
    lp.objective.assign(n, Rational(0));
    for (const auto& b : t.basis()) lp.add_eq(to_rational(b), Rational(0));
    QVector total(n, Rational(0));
    for (std::size_t k = 0; k < n; ++k) {
        QVector e(n, Rational(0));
        e[k] = 1;
        if (!h.support()[k]) {
            lp.add_eq(e, Rational(0));
        } else if (!on[k]) {
            e[k] = -1;
            lp.add_le(e, Rational(0));
            total[k] = 1;
        }
    }
    lp.add_eq(total, Rational(1));
    LpResult<Rational> res = solve_lp(lp);
    if (res.status != LpStatus::Optimal) {
        throw InconsistencyError("support pattern of z is unrealized yet no separating relation exists");
    }
    return binomial_certificate(primitive(res.x), z, h.v());
}

Certificate monomial_certificate(const OrbitHull& h, const CVector& z, const std::vector<std::size_t>& active,
                                 const HullOptions& opt) {
    const std::size_t m = active.size();
    if (m == 0) throw CertificateError("z = 0 cannot be separated by a monomial");
    std::vector<std::vector<double>> gaps;  // xi_A - x_A per vertex
    for (auto i : h.q_vertices()) {
        std::vector<double> g(m);
        for (std::size_t j = 0; j < m; ++j) {
            std::size_t k = active[j];
            g[j] = std::log(std::abs(z[k])) - h.log_v()[k] - h.points()[i][k];
        }
        gaps.push_back(std::move(g));
    }

    // maximize delta: <g, s> >= delta for all vertices, s >= 0, sum s = 1; exact on the dyadic gaps
    LinearProgram<Rational> lp;
    lp.num_vars = m + 1;
    lp.objective.assign(m + 1, Rational(0));
    lp.objective[m] = 1;
    for (const auto& g : gaps) {
        QVector row = dyadic(g);
        for (auto& x : row) x = -x;
        row.push_back(Rational(1));
        lp.add_le(std::move(row), Rational(0));
    }
    for (std::size_t j = 0; j < m; ++j) {
        QVector row(m + 1, Rational(0));
        row[j] = -1;
        lp.add_le(std::move(row), Rational(0));
    }
    QVector ones(m + 1, Rational(1));
    ones[m] = 0;
    lp.add_eq(std::move(ones), Rational(1));
    LpResult<Rational> res = solve_lp(lp);
    if (res.status != LpStatus::Optimal || res.value <= 0) {
        throw CertificateError("no monomial separates z from the hull (LP margin " +
                               std::to_string(res.status == LpStatus::Optimal ? res.value.convert_to<double>() : 0.0) +
                               ")");
    }
    const double delta = res.value.convert_to<double>();

    // shift into the open orthant; costs at most delta/4 of the margin
    double big = 0.0;
    for (const auto& g : gaps) {
        for (double x : g) big = std::max(big, std::abs(x));
    }
    const double eps = delta / (4.0 * (big + 1.0));
    std::vector<double> r(m);
    double rmax = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        r[j] = std::max(res.x[j].convert_to<double>(), 0.0) + eps;
        rmax = std::max(rmax, r[j]);
    }
    for (auto& x : r) x /= rmax;

    std::vector<long long> s;
    double gap = 0.0;
    bool found = false;
    for (long long den = 1;; den = std::min(den * 2, opt.max_denominator)) {
        // common denominator: s_j = round(den r_j) >= 1, so entries stay below den
        QVector q(m);
        for (std::size_t j = 0; j < m; ++j) {
            q[j] = Rational(std::max(1LL, std::llround(static_cast<double>(den) * r[j])));
        }
        std::vector<long long> cand;
        for (const auto& e : primitive(q)) cand.push_back(e.convert_to<long long>());
        double l1 = 0.0, worst = std::numeric_limits<double>::infinity();
        for (long long e : cand) l1 += static_cast<double>(e);
        for (const auto& g : gaps) {
            double v = 0.0;
            for (std::size_t j = 0; j < m; ++j) v += g[j] * static_cast<double>(cand[j]);
            worst = std::min(worst, v);
        }
        if (worst / l1 >= delta / 2.0) {
            s = std::move(cand);
            gap = worst;
            found = true;
            break;
        }
        if (den >= opt.max_denominator) break;
    }
    if (!found) {
        throw CertificateError("rationalization within denominator " + std::to_string(opt.max_denominator) +
                               " loses the separation margin " + std::to_string(delta));
    }
    if (gap <= opt.tol) {
        long long mult = static_cast<long long>(std::floor(opt.tol / gap)) + 1;
        for (auto& e : s) e *= mult;
    }

    Certificate c;
    c.kind = Certificate::Kind::Monomial;
    c.exponent.assign(h.n(), 0);
    for (std::size_t j = 0; j < m; ++j) c.exponent[active[j]] = s[j];
    c.log_value = log_monomial(z, c.exponent);
    c.log_sup = -std::numeric_limits<double>::infinity();
    for (auto i : h.q_vertices()) {
        double v = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            std::size_t k = active[j];
            v += static_cast<double>(s[j]) * (h.points()[i][k] + h.log_v()[k]);
        }
        c.log_sup = std::max(c.log_sup, v);
    }
    return c;
}

}  // namespace detail

Certificate separating_certificate(const OrbitHull& h, const CVector& z, const HullOptions& opt) {
    if (z.size() != h.n()) throw PreconditionError("separating_certificate: dimension mismatch");
    MembershipVerdict mv = membership(h, z, opt.tol);
    if (mv.status != Status::Outside) throw PreconditionError("z is not outside the hull");
    if (mv.certificate && mv.certificate->kind == Certificate::Kind::Monomial && mv.reason == "facet") {
        std::vector<std::size_t> active;
        for (std::size_t k = 0; k < z.size(); ++k) {
            if (z[k] != 0.0) active.push_back(k);
        }
        return detail::monomial_certificate(h, z, active, opt);
    }
    return *mv.certificate;
}

}  // namespace orbithull
