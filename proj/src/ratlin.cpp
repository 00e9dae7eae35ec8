#include "orbithull/ratlin.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "orbithull/errors.hpp"

namespace orbithull {

Rational dot(const QVector& a, const QVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    }
    return s;
}

QVector to_rational(const ZVector& v) {
    QVector out;
    out.reserve(v.size());
    for (const auto& x : v) out.emplace_back(x);
    return out;
}

QMatrix to_rational(const ZMatrix& m) {
    QMatrix out;
    out.reserve(m.size());
    for (const auto& row : m) out.push_back(to_rational(row));
    return out;
}

QVector to_rational(const std::vector<long long>& v) {
    QVector out;
    out.reserve(v.size());
    for (long long x : v) out.emplace_back(x);
    return out;
}

std::vector<double> to_double(const QVector& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x.convert_to<double>());
    return out;
}

std::vector<double> to_double(const ZVector& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x.convert_to<double>());
    return out;
}

QVector dyadic(const std::vector<double>& v) {
    QVector out;
    out.reserve(v.size());
    for (double x : v) {
        if (!std::isfinite(x)) throw PreconditionError("dyadic: non-finite value");
        out.emplace_back(x);  // mpq_set_d is exact
    }
    return out;
}

ZVector primitive(const QVector& v) {
    Integer l = 1;
    for (const auto& x : v) {
        if (!x.is_zero()) l = boost::multiprecision::lcm(l, Integer(denominator(x)));
    }
    ZVector out;
    out.reserve(v.size());
    Integer g = 0;
    for (const auto& x : v) {
        Integer y = Integer(numerator(x)) * (l / Integer(denominator(x)));
        g = boost::multiprecision::gcd(g, y);
        out.push_back(std::move(y));
    }
    if (g > 1) {
        for (auto& y : out) y /= g;
    }
    return out;
}

bool is_zero(const QVector& v) {
    for (const auto& x : v) {
        if (!x.is_zero()) return false;
    }
    return true;
}

Rational best_rational(double x, long long max_den) {
    if (!std::isfinite(x)) throw std::invalid_argument("best_rational: non-finite value");
    if (max_den < 1) throw std::invalid_argument("best_rational: max_den must be positive");
    // convergents h/k, with the last semiconvergent checked at the bound
    long double r = x;
    long double a0 = std::floor(r);
    Integer h_prev = 1, k_prev = 0;
    Integer h = Integer(static_cast<long long>(a0)), k = 1;
    long double frac = r - a0;
    const Integer bound(max_den);
    for (int it = 0; it < 64 && frac > 1e-18L; ++it) {
        long double inv = 1.0L / frac;
        if (inv > 1e15L) break;
        long double a = std::floor(inv);
        frac = inv - a;
        Integer ai(static_cast<long long>(a));
        Integer h_next = ai * h + h_prev;
        Integer k_next = ai * k + k_prev;
        if (k_next > bound) {
            Integer t = (bound - k_prev) / k;
            Integer hs = t * h + h_prev, ks = t * k + k_prev;
            if (ks > 0) {
                Rational semi(hs, ks), conv(h, k);
                Rational xr(x);
                if (abs(semi - xr) < abs(conv - xr)) return semi;
            }
            return Rational(h, k);
        }
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
    }
    return Rational(h, k);
}

QMatrix transpose(const QMatrix& m, std::size_t cols) {
    QMatrix t(cols, QVector(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
    }
    return t;
}

QVector mat_vec(const QMatrix& m, const QVector& x) {
    QVector out;
    out.reserve(m.size());
    for (const auto& row : m) out.push_back(dot(row, x));
    return out;
}

RowEchelon rref(const QMatrix& m, std::size_t cols) {
    QMatrix a = m;
    for (const auto& row : a) {
        if (row.size() != cols) throw std::invalid_argument("rref: ragged matrix");
    }
    RowEchelon out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c].is_zero()) ++p;
        if (p == a.size()) continue;
        std::swap(a[r], a[p]);
        Rational inv = 1 / a[r][c];
        for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            Rational f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) {
                if (!a[r][j].is_zero()) a[i][j] -= f * a[r][j];
            }
        }
        out.pivots.push_back(c);
        ++r;
    }
    a.resize(r);
    out.rows = std::move(a);
    return out;
}

std::size_t rank(const QMatrix& m, std::size_t cols) { return rref(m, cols).rows.size(); }

QMatrix row_space_basis(const QMatrix& m, std::size_t cols) { return rref(m, cols).rows; }

QMatrix null_space(const QMatrix& m, std::size_t cols) {
    RowEchelon e = rref(m, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    QMatrix out;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        QVector x(cols, Rational(0));
        x[f] = 1;
        for (std::size_t i = 0; i < e.rows.size(); ++i) x[e.pivots[i]] = -e.rows[i][f];
        out.push_back(std::move(x));
    }
    return out;
}

std::optional<QVector> solve(const QMatrix& m, const QVector& b, std::size_t cols) {
    if (m.size() != b.size()) throw std::invalid_argument("solve: dimension mismatch");
    QMatrix aug = m;
    for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
    RowEchelon e = rref(aug, cols + 1);
    QVector x(cols, Rational(0));
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
        if (e.pivots[i] == cols) return std::nullopt;
        x[e.pivots[i]] = e.rows[i][cols];
    }
    return x;
}

QMatrix inverse(const QMatrix& m) {
    const std::size_t k = m.size();
    QMatrix aug(k, QVector(2 * k, Rational(0)));
    for (std::size_t i = 0; i < k; ++i) {
        if (m[i].size() != k) throw std::invalid_argument("inverse: not square");
        for (std::size_t j = 0; j < k; ++j) aug[i][j] = m[i][j];
        aug[i][k + i] = 1;
    }
    RowEchelon e = rref(aug, 2 * k);
    if (e.rows.size() < k || (k > 0 && e.pivots[k - 1] != k - 1)) {
        throw std::invalid_argument("inverse: singular matrix");
    }
    QMatrix out(k, QVector(k));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) out[i][j] = e.rows[i][k + j];
    }
    return out;
}

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

void axpy_row(ZVector& target, const Integer& q, const ZVector& src) {
    for (std::size_t j = 0; j < target.size(); ++j) {
        if (src[j] != 0) target[j] -= q * src[j];
    }
}

}  // namespace

ZMatrix hermite_normal_form(const ZMatrix& rows, std::size_t n) {
    ZMatrix a;
    for (const auto& row : rows) {
        if (row.size() != n) throw std::invalid_argument("hermite_normal_form: ragged matrix");
        a.push_back(row);
    }
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < a.size(); ++c) {
        bool has_pivot = false;
        while (true) {
            std::size_t best = a.size();
            for (std::size_t i = r; i < a.size(); ++i) {
                if (a[i][c] != 0 && (best == a.size() || abs(a[i][c]) < abs(a[best][c]))) best = i;
            }
            if (best == a.size()) break;
            has_pivot = true;
            std::swap(a[r], a[best]);
            bool clean = true;
            for (std::size_t i = r + 1; i < a.size(); ++i) {
                if (a[i][c] == 0) continue;
                Integer q = a[i][c] / a[r][c];
                axpy_row(a[i], q, a[r]);
                if (a[i][c] != 0) clean = false;
            }
            if (clean) break;
        }
        if (!has_pivot) continue;
        if (a[r][c] < 0) {
            for (auto& x : a[r]) x = -x;
        }
        for (std::size_t i = 0; i < r; ++i) {
            Integer q = floor_div(a[i][c], a[r][c]);
            if (q != 0) axpy_row(a[i], q, a[r]);
        }
        ++r;
    }
    a.resize(r);
    return a;
}

ZMatrix integer_kernel(const ZMatrix& m, std::size_t n) {
    const std::size_t r = m.size();
    ZMatrix aug(n, ZVector(r + n, Integer(0)));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < r; ++i) {
            if (m[i].size() != n) throw std::invalid_argument("integer_kernel: ragged matrix");
            aug[j][i] = m[i][j];
        }
        aug[j][r + j] = 1;
    }
    ZMatrix h = hermite_normal_form(aug, r + n);
    ZMatrix kernel;
    for (const auto& row : h) {
        bool zero_head = true;
        for (std::size_t i = 0; i < r; ++i) {
            if (row[i] != 0) {
                zero_head = false;
                break;
            }
        }
        if (zero_head) kernel.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(r), row.end());
    }
    return hermite_normal_form(kernel, n);
}

// ---------------------------------------------------------------------------

RationalSubspace::RationalSubspace(std::size_t n, const QMatrix& spanning) : n_(n) {
    basis_ = row_space_basis(spanning, n);
    const std::size_t d = basis_.size();
    proj_.assign(n, QVector(n, Rational(0)));
    if (d > 0) {
        QMatrix gram(d, QVector(d));
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) gram[i][j] = dot(basis_[i], basis_[j]);
        }
        QMatrix gi = inverse(gram);
        // P = B^T G^{-1} B
        QMatrix gb(d, QVector(n, Rational(0)));
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t k = 0; k < d; ++k) {
                if (gi[i][k].is_zero()) continue;
                for (std::size_t j = 0; j < n; ++j) gb[i][j] += gi[i][k] * basis_[k][j];
            }
        }
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                Rational s = 0;
                for (std::size_t i = 0; i < d; ++i) {
                    if (!basis_[i][a].is_zero()) s += basis_[i][a] * gb[i][b];
                }
                proj_[a][b] = s;
            }
        }
    }
    proj_d_.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            proj_d_(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = proj_[a][b].convert_to<double>();
        }
    }
}

RationalSubspace RationalSubspace::full(std::size_t n) {
    QMatrix id(n, QVector(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
    return RationalSubspace(n, id);
}

QVector RationalSubspace::project(const QVector& x) const {
    if (x.size() != n_) throw std::invalid_argument("project: dimension mismatch");
    return mat_vec(proj_, x);
}

std::vector<double> RationalSubspace::project(const std::vector<double>& x) const {
    if (x.size() != n_) throw std::invalid_argument("project: dimension mismatch");
    Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(n_));
    Eigen::VectorXd p = proj_d_ * xv;
    return std::vector<double>(p.data(), p.data() + p.size());
}

bool RationalSubspace::contains(const QVector& x) const { return project(x) == x; }

double RationalSubspace::distance(const std::vector<double>& x) const {
    std::vector<double> p = project(x);
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) s += (x[i] - p[i]) * (x[i] - p[i]);
    return std::sqrt(s);
}

bool RationalSubspace::contains(const RationalSubspace& other) const {
    for (const auto& b : other.basis()) {
        if (!contains(b)) return false;
    }
    return true;
}

bool RationalSubspace::operator==(const RationalSubspace& other) const {
    return n_ == other.n_ && basis_ == other.basis_;
}

bool subspace_contains(const RationalSubspace& s, const std::vector<double>& x, double tol) {
    return s.distance(x) <= tol;
}

bool subspace_contains(const RationalSubspace& s, const QVector& x) { return s.contains(x); }

// ---------------------------------------------------------------------------

TorusLattice TorusLattice::saturate(const ZMatrix& rows, std::size_t n) {
    for (const auto& row : rows) {
        if (row.size() != n) throw ParseError("lattice row has length " + std::to_string(row.size()) +
                                              ", expected " + std::to_string(n));
    }
    TorusLattice t;
    t.n_ = n;
    t.relations_ = integer_kernel(rows, n);
    t.basis_ = integer_kernel(t.relations_, n);
    t.tangent_ = RationalSubspace(n, to_rational(t.basis_));

    const std::size_t d = t.basis_.size();
    QMatrix b = to_rational(t.basis_);
    if (d > 0) {
        QMatrix gram(d, QVector(d));
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) gram[i][j] = dot(b[i], b[j]);
        }
        QMatrix gi = inverse(gram);
        t.coords_.assign(d, QVector(n, Rational(0)));
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t k = 0; k < d; ++k) {
                for (std::size_t j = 0; j < n; ++j) t.coords_[i][j] += gi[i][k] * b[k][j];
            }
        }
    }
    t.coords_d_.resize(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            t.coords_d_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = t.coords_[i][j].convert_to<double>();
        }
    }

    const std::size_t r = t.relations_.size();
    Eigen::MatrixXd a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = t.relations_[i][j].convert_to<double>();
        }
    }
    if (r > 0) {
        Eigen::MatrixXd gram = a * a.transpose();
        t.relation_lift_ = a.transpose() * gram.inverse();
    } else {
        t.relation_lift_.resize(static_cast<Eigen::Index>(n), 0);
    }
    return t;
}

TorusLattice TorusLattice::saturate(const std::vector<std::vector<long long>>& rows, std::size_t n) {
    ZMatrix z;
    for (const auto& row : rows) {
        ZVector zr;
        for (long long x : row) zr.emplace_back(x);
        z.push_back(std::move(zr));
    }
    return saturate(z, n);
}

TorusLattice TorusLattice::full(std::size_t n) {
    ZMatrix id(n, ZVector(n, Integer(0)));
    for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
    return saturate(id, n);
}

QVector TorusLattice::intrinsic(const QVector& x) const { return mat_vec(coords_, x); }

std::vector<double> TorusLattice::intrinsic(const std::vector<double>& x) const {
    if (x.size() != n_) throw std::invalid_argument("intrinsic: dimension mismatch");
    Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(n_));
    Eigen::VectorXd c = coords_d_ * xv;
    return std::vector<double>(c.data(), c.data() + c.size());
}

QVector TorusLattice::ambient(const QVector& c) const {
    if (c.size() != rank()) throw std::invalid_argument("ambient: dimension mismatch");
    QVector x(n_, Rational(0));
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i].is_zero()) continue;
        for (std::size_t j = 0; j < n_; ++j) {
            if (basis_[i][j] != 0) x[j] += c[i] * Rational(basis_[i][j]);
        }
    }
    return x;
}

std::vector<double> TorusLattice::ambient(const std::vector<double>& c) const {
    if (c.size() != rank()) throw std::invalid_argument("ambient: dimension mismatch");
    std::vector<double> x(n_, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = 0; j < n_; ++j) x[j] += c[i] * basis_[i][j].convert_to<double>();
    }
    return x;
}

QVector TorusLattice::restrict_functional(const QVector& s) const {
    if (s.size() != n_) throw std::invalid_argument("restrict_functional: dimension mismatch");
    QVector out;
    out.reserve(rank());
    for (const auto& row : basis_) out.push_back(dot(to_rational(row), s));
    return out;
}

QVector TorusLattice::represent_functional(const QVector& phi) const {
    if (phi.size() != rank()) throw std::invalid_argument("represent_functional: dimension mismatch");
    QVector a(n_, Rational(0));
    for (std::size_t i = 0; i < phi.size(); ++i) {
        if (phi[i].is_zero()) continue;
        for (std::size_t j = 0; j < n_; ++j) a[j] += phi[i] * coords_[i][j];
    }
    return a;
}

std::vector<double> phase_residual(const TorusLattice& t, const std::vector<double>& theta) {
    if (theta.size() != t.n()) throw std::invalid_argument("phase_residual: dimension mismatch");
    std::vector<double> out;
    for (const auto& a : t.relations()) {
        double y = 0.0;
        for (std::size_t j = 0; j < theta.size(); ++j) y += a[j].convert_to<double>() * theta[j];
        y /= 2.0 * std::numbers::pi;
        out.push_back(y - std::round(y));
    }
    return out;
}

double phase_distance(const TorusLattice& t, const std::vector<double>& theta) {
    std::vector<double> r = phase_residual(t, theta);
    if (r.empty()) return 0.0;
    Eigen::Map<const Eigen::VectorXd> rv(r.data(), static_cast<Eigen::Index>(r.size()));
    return (t.relation_lift_ * (2.0 * std::numbers::pi * rv)).norm();
}

bool phase_in_torus(const TorusLattice& t, const std::vector<double>& theta, double tol) {
    return phase_distance(t, theta) <= tol;
}

}  // namespace orbithull
