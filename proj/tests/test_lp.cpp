#include "doctest.h"
#include "orbithull/lp.hpp"

using namespace orbithull;

TEST_CASE("exact LP optimum") {
    // max x + y  s.t.  x + 2y <= 4, 3x + y <= 6, x >= 0, y >= 0
    LinearProgram<Rational> lp;
    lp.num_vars = 2;
    lp.objective = {1, 1};
    lp.add_le({1, 2}, 4);
    lp.add_le({3, 1}, 6);
    lp.add_le({-1, 0}, 0);
    lp.add_le({0, -1}, 0);
    auto r = solve_lp(lp);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == Rational(14, 5));
    CHECK(r.x[0] == Rational(8, 5));
    CHECK(r.x[1] == Rational(6, 5));
}

TEST_CASE("equalities, infeasibility and unboundedness") {
    LinearProgram<Rational> eq;
    eq.num_vars = 2;
    eq.objective = {1, -1};
    eq.add_eq({1, 1}, 1);
    eq.add_le({-1, 0}, 0);
    eq.add_le({0, -1}, 0);
    auto r = solve_lp(eq);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == 1);

    LinearProgram<Rational> bad;
    bad.num_vars = 1;
    bad.objective = {1};
    bad.add_le({1}, -1);
    bad.add_le({-1}, -1);
    CHECK(solve_lp(bad).status == LpStatus::Infeasible);

    LinearProgram<Rational> open;
    open.num_vars = 2;
    open.objective = {1, 0};
    open.add_le({0, 1}, 1);
    CHECK(solve_lp(open).status == LpStatus::Unbounded);
}

TEST_CASE("double LP agrees with exact LP on a degenerate vertex") {
    LinearProgram<double> lp;
    lp.num_vars = 2;
    lp.objective = {1, 1};
    lp.add_le({1, 0}, 1);
    lp.add_le({0, 1}, 1);
    lp.add_le({1, 1}, 2);
    lp.add_le({-1, 0}, 0);
    auto r = solve_lp(lp);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == doctest::Approx(2.0));
}
