#include "orbithull/lp.hpp"

#include <cmath>
#include <stdexcept>

namespace orbithull {

namespace {

template <class Scalar>
struct Arith;

template <>
struct Arith<Rational> {
    double eps;
    int sign(const Rational& x) const { return x.sign(); }
};

template <>
struct Arith<double> {
    double eps;
    int sign(double x) const { return x > eps ? 1 : (x < -eps ? -1 : 0); }
};

template <class Scalar>
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols, Arith<Scalar> ar)
        : t_(rows, std::vector<Scalar>(cols + 1, Scalar(0))), basis_(rows), obj_(cols + 1, Scalar(0)), ar_(ar) {}

    std::vector<std::vector<Scalar>> t_;
    std::vector<std::size_t> basis_;
    std::vector<Scalar> obj_;  // reduced costs; last entry is minus the objective value
    Arith<Scalar> ar_;

    std::size_t cols() const { return obj_.size() - 1; }

    void pivot(std::size_t r, std::size_t c) {
        Scalar inv = Scalar(1) / t_[r][c];
        for (auto& x : t_[r]) x *= inv;
        for (std::size_t i = 0; i < t_.size(); ++i) {
            if (i == r || ar_.sign(t_[i][c]) == 0) continue;
            Scalar f = t_[i][c];
            for (std::size_t j = 0; j < t_[i].size(); ++j) {
                if (ar_.sign(t_[r][j]) != 0) t_[i][j] -= f * t_[r][j];
            }
            t_[i][c] = Scalar(0);
        }
        if (ar_.sign(obj_[c]) != 0) {
            Scalar f = obj_[c];
            for (std::size_t j = 0; j < obj_.size(); ++j) {
                if (ar_.sign(t_[r][j]) != 0) obj_[j] -= f * t_[r][j];
            }
            obj_[c] = Scalar(0);
        }
        basis_[r] = c;
    }

    void set_costs(const std::vector<Scalar>& c) {
        for (std::size_t j = 0; j < obj_.size(); ++j) obj_[j] = j < c.size() ? c[j] : Scalar(0);
        for (std::size_t i = 0; i < t_.size(); ++i) {
            const Scalar& cb = c[basis_[i]];
            if (ar_.sign(cb) == 0) continue;
            for (std::size_t j = 0; j < obj_.size(); ++j) obj_[j] -= cb * t_[i][j];
        }
    }

    // Returns false when unbounded.
    bool run(const std::vector<bool>& allowed) {
        while (true) {
            std::size_t enter = cols();
            for (std::size_t j = 0; j < cols(); ++j) {
                if (allowed[j] && ar_.sign(obj_[j]) > 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == cols()) return true;
            std::size_t leave = t_.size();
            Scalar best{};
            for (std::size_t i = 0; i < t_.size(); ++i) {
                if (ar_.sign(t_[i][enter]) <= 0) continue;
                Scalar ratio = t_[i].back() / t_[i][enter];
                if (leave == t_.size() || ratio < best || (!(best < ratio) && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == t_.size()) return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace

template <class Scalar>
LpResult<Scalar> solve_lp(const LinearProgram<Scalar>& lp, double eps) {
    const std::size_t n = lp.num_vars;
    const std::size_t m1 = lp.le_rows.size();
    const std::size_t m2 = lp.eq_rows.size();
    if (lp.le_rhs.size() != m1 || lp.eq_rhs.size() != m2 || lp.objective.size() != n) {
        throw std::invalid_argument("solve_lp: inconsistent sizes");
    }
    const std::size_t m = m1 + m2;
    // columns: x+ (n), x- (n), slacks (m1), artificials (m)
    const std::size_t art0 = 2 * n + m1;
    const std::size_t cols = art0 + m;
    Arith<Scalar> ar{eps};
    Tableau<Scalar> tab(m, cols, ar);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& row = i < m1 ? lp.le_rows[i] : lp.eq_rows[i - m1];
        Scalar rhs = i < m1 ? lp.le_rhs[i] : lp.eq_rhs[i - m1];
        if (row.size() != n) throw std::invalid_argument("solve_lp: row length mismatch");
        Scalar sgn = ar.sign(rhs) < 0 ? Scalar(-1) : Scalar(1);
        for (std::size_t j = 0; j < n; ++j) {
            tab.t_[i][j] = sgn * row[j];
            tab.t_[i][n + j] = -sgn * row[j];
        }
        if (i < m1) tab.t_[i][2 * n + i] = sgn;
        tab.t_[i][art0 + i] = Scalar(1);
        tab.t_[i].back() = sgn * rhs;
        tab.basis_[i] = art0 + i;
    }

    std::vector<Scalar> phase1(cols, Scalar(0));
    for (std::size_t i = 0; i < m; ++i) phase1[art0 + i] = Scalar(-1);
    tab.set_costs(phase1);
    std::vector<bool> allowed(cols, true);
    tab.run(allowed);

    LpResult<Scalar> res;
    // obj_.back() holds minus the current objective value
    if (ar.sign(-tab.obj_.back()) < 0) {
        res.status = LpStatus::Infeasible;
        return res;
    }
    // drive artificials out of the basis, dropping redundant rows
    for (std::size_t i = 0; i < tab.t_.size();) {
        if (tab.basis_[i] < art0) {
            ++i;
            continue;
        }
        std::size_t c = art0;
        for (std::size_t j = 0; j < art0; ++j) {
            if (ar.sign(tab.t_[i][j]) != 0) {
                c = j;
                break;
            }
        }
        if (c == art0) {
            tab.t_.erase(tab.t_.begin() + static_cast<std::ptrdiff_t>(i));
            tab.basis_.erase(tab.basis_.begin() + static_cast<std::ptrdiff_t>(i));
            continue;
        }
        tab.pivot(i, c);
        ++i;
    }
    for (std::size_t j = art0; j < cols; ++j) allowed[j] = false;

    std::vector<Scalar> phase2(cols, Scalar(0));
    for (std::size_t j = 0; j < n; ++j) {
        phase2[j] = lp.objective[j];
        phase2[n + j] = -lp.objective[j];
    }
    tab.set_costs(phase2);
    if (!tab.run(allowed)) {
        res.status = LpStatus::Unbounded;
        return res;
    }
    std::vector<Scalar> y(cols, Scalar(0));
    for (std::size_t i = 0; i < tab.t_.size(); ++i) y[tab.basis_[i]] = tab.t_[i].back();
    res.x.assign(n, Scalar(0));
    res.value = Scalar(0);
    for (std::size_t j = 0; j < n; ++j) {
        res.x[j] = y[j] - y[n + j];
        res.value += lp.objective[j] * res.x[j];
    }
    res.status = LpStatus::Optimal;
    return res;
}

template LpResult<Rational> solve_lp(const LinearProgram<Rational>&, double);
template LpResult<double> solve_lp(const LinearProgram<double>&, double);

}  // namespace orbithull
