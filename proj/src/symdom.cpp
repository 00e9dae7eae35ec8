#include "orbithull/symdom.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <string>

#include "orbithull/errors.hpp"

namespace orbithull {

namespace {

void check_k(std::size_t k, std::size_t n) {
    if (k < 1 || k > n) {
        throw PreconditionError("k = " + std::to_string(k) + " out of range 1.." + std::to_string(n));
    }
}

std::vector<double> sorted_desc(std::vector<double> x) {
    std::sort(x.begin(), x.end(), std::greater<>());
    return x;
}

double prefix_product(const std::vector<double>& sorted, std::size_t k) {
    double p = 1.0;
    for (std::size_t i = 0; i < k; ++i) p *= sorted[i];
    return p;
}

/// Verdict for the system lhs_k <= rhs_k; violation scaled by max(1, rhs).
MembershipVerdict inequality_verdict(const std::vector<double>& lhs, const std::vector<double>& rhs, double tol) {
    MembershipVerdict out;
    out.tolerance = tol;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        double viol = (lhs[i] - rhs[i]) / std::max(1.0, rhs[i]);
        if (viol > out.max_violation) {
            out.max_violation = viol;
            out.facet = i;
        }
    }
    if (lhs.empty()) {
        out.facet.reset();
        return out;
    }
    if (out.max_violation > tol) {
        out.status = Status::Outside;
        out.reason = "mu";
    } else if (out.max_violation >= -tol) {
        out.status = Status::Boundary;
        out.reason = "mu";
    } else {
        out.status = Status::Inside;
        out.facet.reset();
    }
    return out;
}

std::vector<double> singular_values(const Eigen::MatrixXcd& z) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(z);
    const auto& s = svd.singularValues();
    return sorted_desc(std::vector<double>(s.data(), s.data() + s.size()));
}

}  // namespace

double mu_polydisc(const CVector& z, std::size_t k) {
    check_k(k, z.size());
    return mu_profile(z)[k - 1];
}

std::vector<double> mu_profile(const CVector& z) {
    std::vector<double> a;
    for (const auto& x : z) a.push_back(std::abs(x));
    a = sorted_desc(a);
    std::vector<double> out;
    for (std::size_t k = 1; k <= a.size(); ++k) out.push_back(prefix_product(a, k));
    return out;
}

MembershipVerdict member_polydisc(const CVector& z, const CVector& v, double tol) {
    if (z.size() != v.size()) throw PreconditionError("member_polydisc: dimension mismatch");
    MembershipVerdict out = inequality_verdict(mu_profile(z), mu_profile(v), tol);
    if (out.status == Status::Outside) {
        const std::size_t k = *out.facet + 1;
        std::vector<std::size_t> idx(z.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return std::abs(z[a]) > std::abs(z[b]); });
        Certificate c;
        c.kind = Certificate::Kind::Monomial;
        c.exponent.assign(z.size(), 0);
        for (std::size_t i = 0; i < k; ++i) c.exponent[idx[i]] = 1;
        c.log_value = std::log(mu_polydisc(z, k));
        double sup = mu_polydisc(v, k);
        c.log_sup = sup > 0.0 ? std::log(sup) : -std::numeric_limits<double>::infinity();
        out.certificate = c;
    }
    return out;
}

double mu_matrix(const Eigen::MatrixXcd& z, std::size_t k) {
    check_k(k, static_cast<std::size_t>(std::min(z.rows(), z.cols())));
    return prefix_product(singular_values(z), k);
}

MembershipVerdict member_symdom(const Eigen::MatrixXcd& z, const Eigen::MatrixXcd& v, double tol) {
    if (z.rows() != v.rows() || z.cols() != v.cols()) {
        throw PreconditionError("member_symdom: shape mismatch (" + std::to_string(z.rows()) + "x" +
                                std::to_string(z.cols()) + " vs " + std::to_string(v.rows()) + "x" +
                                std::to_string(v.cols()) + ")");
    }
    std::vector<double> sz = singular_values(z), sv = singular_values(v);
    std::vector<double> lhs, rhs;
    for (std::size_t k = 1; k <= sz.size(); ++k) {
        lhs.push_back(prefix_product(sz, k));
        rhs.push_back(prefix_product(sv, k));
    }
    return inequality_verdict(lhs, rhs, tol);
}

double exterior_power_norm(const Eigen::MatrixXd& a, std::size_t k) {
    if (a.rows() != a.cols()) throw PreconditionError("exterior_power_norm: matrix is not square");
    check_k(k, static_cast<std::size_t>(a.rows()));
    double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-8) std::clog << "exterior_power_norm: symmetrizing matrix with asymmetry " << asym << "\n";
    Eigen::MatrixXd s = 0.5 * (a + a.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s, Eigen::EigenvaluesOnly);
    std::vector<double> ev;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) ev.push_back(std::max(0.0, es.eigenvalues()(i)));
    return prefix_product(sorted_desc(ev), k);
}

// ---------------------------------------------------------------------------

Sl2Product::Sl2Product(std::size_t n) : n_(n), k_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(3 * n))) {
    for (std::size_t a = 0; a < n; ++a) k_(static_cast<Eigen::Index>(3 * a + 2)) = 0.5;
}

Eigen::VectorXd Sl2Product::bracket(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim()));
    for (std::size_t blk = 0; blk < n_; ++blk) {
        const auto o = static_cast<Eigen::Index>(3 * blk);
        const double h1 = a(o), x1 = a(o + 1), y1 = a(o + 2);
        const double h2 = b(o), x2 = b(o + 1), y2 = b(o + 2);
        // [h,X] = 2Y, [h,Y] = 2X, [X,Y] = -2h
        out(o) = -2.0 * (x1 * y2 - y1 * x2);
        out(o + 1) = 2.0 * (h1 * y2 - y1 * h2);
        out(o + 2) = 2.0 * (h1 * x2 - x1 * h2);
    }
    return out;
}

Eigen::MatrixXd Sl2Product::ad(const Eigen::VectorXd& a) const {
    const auto d = static_cast<Eigen::Index>(dim());
    Eigen::MatrixXd m(d, d);
    for (Eigen::Index j = 0; j < d; ++j) m.col(j) = bracket(a, Eigen::VectorXd::Unit(d, j));
    return m;
}

Eigen::VectorXd Sl2Product::embed(const std::vector<double>& v) const {
    if (v.size() != 2 * n_) {
        throw PreconditionError("expected " + std::to_string(2 * n_) + " Cartan coordinates, got " +
                                std::to_string(v.size()));
    }
    Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim()));
    for (std::size_t a = 0; a < n_; ++a) {
        out(static_cast<Eigen::Index>(3 * a + 1)) = v[2 * a];
        out(static_cast<Eigen::Index>(3 * a)) = v[2 * a + 1];
    }
    return out;
}

Eigen::MatrixXd a_operator(const Sl2Product& l, const std::vector<double>& v) {
    Eigen::VectorXd x = l.embed(v);
    Eigen::MatrixXd adv = l.ad(x);
    // ad(v) is symmetric for v in the noncompact part
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (adv + adv.transpose()));
    const double thresh = 1e-8 * std::max(adv.norm(), 1e-300);
    const auto d = static_cast<Eigen::Index>(l.dim());
    Eigen::MatrixXd pi = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        if (std::abs(es.eigenvalues()(i)) <= thresh) {
            Eigen::VectorXd u = es.eigenvectors().col(i);
            pi += u * u.transpose();
        }
    }
    Eigen::VectorXd w = l.bracket(x, l.bracket(x, l.k()));
    return l.ad(w) * pi * l.ad(l.k());
}

PkResult p_k_sl2n(const Sl2Product& l, const std::vector<double>& v, std::size_t k) {
    check_k(k, l.n());
    if (v.size() != 2 * l.n()) {
        throw PreconditionError("expected " + std::to_string(2 * l.n()) + " Cartan coordinates, got " +
                                std::to_string(v.size()));
    }
    std::vector<double> norms;
    for (std::size_t a = 0; a < l.n(); ++a) norms.push_back(std::hypot(v[2 * a], v[2 * a + 1]));
    if (std::all_of(norms.begin(), norms.end(), [](double x) { return x == 0.0; })) return {0.0, true};
    const double scale = *std::max_element(norms.begin(), norms.end());
    for (std::size_t a = 0; a < norms.size(); ++a) {
        if (norms[a] <= 1e-12 * scale) throw DegenerateInput("block " + std::to_string(a + 1) + " of v vanishes");
        for (std::size_t b = a + 1; b < norms.size(); ++b) {
            if (std::abs(norms[a] - norms[b]) <= 1e-12 * scale) {
                throw DegenerateInput("blocks " + std::to_string(a + 1) + " and " + std::to_string(b + 1) +
                                      " of v have equal norms");
            }
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a_operator(l, v));
    const auto& s = svd.singularValues();
    std::vector<double> sv = sorted_desc(std::vector<double>(s.data(), s.data() + s.size()));
    return {prefix_product(sv, k), false};
}

}  // namespace orbithull
