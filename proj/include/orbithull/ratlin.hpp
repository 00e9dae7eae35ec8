/**
 * Exact linear algebra over the rationals and integer lattices in Z^n.
 *
 * Matrices are stored as lists of rows.  Rational arithmetic is GMP-backed.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/gmp.hpp>

namespace orbithull {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using QVector = std::vector<Rational>;
using QMatrix = std::vector<QVector>;
using ZVector = std::vector<Integer>;
using ZMatrix = std::vector<ZVector>;

Rational dot(const QVector& a, const QVector& b);
QVector to_rational(const ZVector& v);
QMatrix to_rational(const ZMatrix& m);
QVector to_rational(const std::vector<long long>& v);
std::vector<double> to_double(const QVector& v);
std::vector<double> to_double(const ZVector& v);

/// Exact binary value of each double.
QVector dyadic(const std::vector<double>& v);

/// Scales v to the coprime integer vector with the same direction (zero stays zero).
ZVector primitive(const QVector& v);

bool is_zero(const QVector& v);

/// Best rational approximation p/q of x with 1 <= q <= max_den (continued fractions).
Rational best_rational(double x, long long max_den);
QMatrix transpose(const QMatrix& m, std::size_t cols);
QVector mat_vec(const QMatrix& m, const QVector& x);

struct RowEchelon {
    QMatrix rows;                     // nonzero rows of the reduced echelon form
    std::vector<std::size_t> pivots;  // pivot column of each row
};

RowEchelon rref(const QMatrix& m, std::size_t cols);
std::size_t rank(const QMatrix& m, std::size_t cols);
QMatrix row_space_basis(const QMatrix& m, std::size_t cols);
/// Basis of {x : m x = 0}.
QMatrix null_space(const QMatrix& m, std::size_t cols);
/// Some solution of m x = b, if one exists.
std::optional<QVector> solve(const QMatrix& m, const QVector& b, std::size_t cols);
QMatrix inverse(const QMatrix& m);

/// Canonical row Hermite normal form of the lattice generated by the rows; zero rows dropped.
ZMatrix hermite_normal_form(const ZMatrix& rows, std::size_t n);
/// Z-basis (in Hermite normal form) of {x in Z^n : m x = 0}.
ZMatrix integer_kernel(const ZMatrix& m, std::size_t n);

/**
 * Real span of a list of rational vectors, with exact orthogonal projection.
 */
class RationalSubspace {
public:
    RationalSubspace() = default;
    RationalSubspace(std::size_t n, const QMatrix& spanning);
    static RationalSubspace full(std::size_t n);

    std::size_t n() const { return n_; }
    std::size_t dim() const { return basis_.size(); }
    const QMatrix& basis() const { return basis_; }
    const QMatrix& projection() const { return proj_; }
    const Eigen::MatrixXd& projection_double() const { return proj_d_; }

    QVector project(const QVector& x) const;
    std::vector<double> project(const std::vector<double>& x) const;
    bool contains(const QVector& x) const;
    double distance(const std::vector<double>& x) const;
    bool contains(const RationalSubspace& other) const;
    bool operator==(const RationalSubspace& other) const;

private:
    std::size_t n_ = 0;
    QMatrix basis_;
    QMatrix proj_;
    Eigen::MatrixXd proj_d_;
};

bool subspace_contains(const RationalSubspace& s, const std::vector<double>& x, double tol);
bool subspace_contains(const RationalSubspace& s, const QVector& x);

/**
 * Saturated lattice Gamma in Z^n; t^R is its real span and T = exp(i t^R).
 *
 * The basis is the row Hermite normal form of t^R intersected with Z^n.  The
 * relations are a saturated Z-basis of the orthogonal complement; since they
 * form a primitive matrix A, A Z^n = Z^{n-d}.
 */
class TorusLattice {
public:
    TorusLattice() = default;
    static TorusLattice saturate(const ZMatrix& rows, std::size_t n);
    static TorusLattice saturate(const std::vector<std::vector<long long>>& rows, std::size_t n);
    static TorusLattice full(std::size_t n);

    std::size_t n() const { return n_; }
    std::size_t rank() const { return basis_.size(); }
    const ZMatrix& basis() const { return basis_; }
    const ZMatrix& relations() const { return relations_; }
    const RationalSubspace& tangent() const { return tangent_; }

    /// Coordinates c with sum_i c_i gamma_i = x, for x in t^R.
    QVector intrinsic(const QVector& x) const;
    std::vector<double> intrinsic(const std::vector<double>& x) const;
    QVector ambient(const QVector& c) const;
    std::vector<double> ambient(const std::vector<double>& c) const;
    /// Restriction of a functional s on R^n to t^R, in intrinsic coordinates: B s.
    QVector restrict_functional(const QVector& s) const;
    /// The vector a in t^R with <ambient(c), a> = <phi, c> for all c.
    QVector represent_functional(const QVector& phi) const;

    bool operator==(const TorusLattice& other) const { return n_ == other.n_ && basis_ == other.basis_; }

private:
    std::size_t n_ = 0;
    ZMatrix basis_;
    ZMatrix relations_;
    RationalSubspace tangent_;
    QMatrix coords_;  // (B B^T)^{-1} B
    Eigen::MatrixXd coords_d_;
    Eigen::MatrixXd relation_lift_;  // A^T (A A^T)^{-1}
    friend double phase_distance(const TorusLattice&, const std::vector<double>&);
    friend std::vector<double> phase_residual(const TorusLattice&, const std::vector<double>&);
};

/// Distance from theta to t^R + 2 pi Z^n.
double phase_distance(const TorusLattice& t, const std::vector<double>& theta);
/// For each relation a_i, the signed distance of <a_i, theta>/(2 pi) to the nearest integer.
std::vector<double> phase_residual(const TorusLattice& t, const std::vector<double>& theta);
bool phase_in_torus(const TorusLattice& t, const std::vector<double>& theta, double tol);

}  // namespace orbithull
