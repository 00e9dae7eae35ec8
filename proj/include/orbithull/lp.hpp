/**
 * Dense two-phase simplex (Bland's rule) over exact rationals or doubles.
 *
 * Solves: maximize c.x subject to A_le x <= b_le, A_eq x = b_eq, x free.
 */
#pragma once

#include <cstddef>
#include <vector>

#include "orbithull/ratlin.hpp"

namespace orbithull {

template <class Scalar>
struct LinearProgram {
    std::size_t num_vars = 0;
    std::vector<std::vector<Scalar>> le_rows;
    std::vector<Scalar> le_rhs;
    std::vector<std::vector<Scalar>> eq_rows;
    std::vector<Scalar> eq_rhs;
    std::vector<Scalar> objective;

    void add_le(std::vector<Scalar> row, Scalar rhs) {
        le_rows.push_back(std::move(row));
        le_rhs.push_back(std::move(rhs));
    }
    void add_eq(std::vector<Scalar> row, Scalar rhs) {
        eq_rows.push_back(std::move(row));
        eq_rhs.push_back(std::move(rhs));
    }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

template <class Scalar>
struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    std::vector<Scalar> x;
    Scalar value{};
};

/// eps is the zero threshold for double pivots and ignored for Rational.
template <class Scalar>
LpResult<Scalar> solve_lp(const LinearProgram<Scalar>& lp, double eps = 1e-10);

extern template LpResult<Rational> solve_lp(const LinearProgram<Rational>&, double);
extern template LpResult<double> solve_lp(const LinearProgram<double>&, double);

}  // namespace orbithull
