/**
 * Isotropy-orbit hulls in bounded symmetric domains: the mu_k functions of the
 * polydisc and of matrix domains, exterior-power norms, and the operators
 * a(v) on sl(2,R)^n whose exterior powers give p_k.
 */
#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "orbithull/group.hpp"
#include "orbithull/hull.hpp"

namespace orbithull {

/// Product of the k largest |z_j|.
double mu_polydisc(const CVector& z, std::size_t k);
std::vector<double> mu_profile(const CVector& z);

/// mu_k(z) <= mu_k(v) for all k; Outside carries the monomial over the k largest coordinates of z.
MembershipVerdict member_polydisc(const CVector& z, const CVector& v, double tol = 1e-9);

/// Product of the k largest singular values.
double mu_matrix(const Eigen::MatrixXcd& z, std::size_t k);

/// Outside reports the violated k (facet = k - 1) without a polynomial certificate.
MembershipVerdict member_symdom(const Eigen::MatrixXcd& z, const Eigen::MatrixXcd& v, double tol = 1e-9);

/// Product of the k largest eigenvalues of a symmetric PSD matrix (negative eigenvalues clamped to 0).
double exterior_power_norm(const Eigen::MatrixXd& a, std::size_t k);

/**
 * sl(2,R)^n with basis (h, X = e + f, Y = e - f) per block, block a at
 * indices 3a, 3a + 1, 3a + 2.  [h,X] = 2Y, [h,Y] = 2X, [X,Y] = -2h.
 * The Cartan-space point (x_a, y_a) of block a is x_a X + y_a h.
 */
class Sl2Product {
public:
    explicit Sl2Product(std::size_t n);

    std::size_t n() const { return n_; }
    std::size_t dim() const { return 3 * n_; }
    Eigen::VectorXd bracket(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;
    Eigen::MatrixXd ad(const Eigen::VectorXd& a) const;
    /// sum of Y/2 over blocks
    const Eigen::VectorXd& k() const { return k_; }
    /// 2n Cartan coordinates (x_1, y_1, x_2, y_2, ...) to the algebra
    Eigen::VectorXd embed(const std::vector<double>& v) const;

private:
    std::size_t n_;
    Eigen::VectorXd k_;
};

struct PkResult {
    double value = 0.0;
    bool degenerate = false;  // v = 0
};

/// a(v) = ad([v,[v,k]]) pi(v) ad(k) with pi(v) the projection onto ker ad(v).
Eigen::MatrixXd a_operator(const Sl2Product& l, const std::vector<double>& v);

/// Product of the k largest singular values of a(v).
PkResult p_k_sl2n(const Sl2Product& l, const std::vector<double>& v, std::size_t k);

}  // namespace orbithull
