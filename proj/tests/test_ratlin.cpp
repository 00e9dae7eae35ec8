#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "orbithull/errors.hpp"
#include "orbithull/ratlin.hpp"
#include "test_util.hpp"

using namespace orbithull;

namespace {

/// Integer points of span(rows) in the box [-r, r]^n.
std::vector<ZVector> span_points(const TorusLattice& t, int r) {
    std::vector<ZVector> out;
    const std::size_t n = t.n();
    std::vector<int> x(n, -r);
    while (true) {
        ZVector z;
        for (int e : x) z.emplace_back(e);
        if (t.tangent().contains(to_rational(z))) out.push_back(z);
        std::size_t i = 0;
        while (i < n && x[i] == r) x[i++] = -r;
        if (i == n) break;
        ++x[i];
    }
    return out;
}

/// Oracle for phase_in_torus: theta - 2 pi m in t^R over a box of integer m.
bool phase_box_search(const TorusLattice& t, const std::vector<double>& theta, double tol) {
    const std::size_t n = t.n();
    double inf = 0.0;
    for (double x : theta) inf = std::max(inf, std::abs(x));
    const int r = static_cast<int>(std::ceil(inf / (2 * std::numbers::pi))) + 1;
    std::vector<int> m(n, -r);
    while (true) {
        std::vector<double> y(n);
        for (std::size_t k = 0; k < n; ++k) y[k] = theta[k] - 2 * std::numbers::pi * m[k];
        if (t.tangent().distance(y) <= tol) return true;
        std::size_t i = 0;
        while (i < n && m[i] == r) m[i++] = -r;
        if (i == n) return false;
        ++m[i];
    }
}

}  // namespace

TEST_CASE("saturate examples") {
    CHECK(TorusLattice::saturate(std::vector<std::vector<long long>>{{2, 2}}, 2).basis() == zmat({{1, 1}}));
    CHECK(TorusLattice::saturate(std::vector<std::vector<long long>>{{1, 0}, {0, 1}}, 2).basis() == zmat({{1, 0}, {0, 1}}));
    CHECK(TorusLattice::saturate(std::vector<std::vector<long long>>{{2, 0}, {0, 3}}, 2).basis() == zmat({{1, 0}, {0, 1}}));
    TorusLattice empty = TorusLattice::saturate(ZMatrix{}, 3);
    CHECK(empty.rank() == 0);
    CHECK(empty.relations().size() == 3);
    CHECK_THROWS_AS(TorusLattice::saturate(std::vector<std::vector<long long>>{{1, 2, 3}}, 2), ParseError);
}

TEST_CASE("saturation contains every integer point of the span") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> e(-3, 3);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 3;
        std::vector<std::vector<long long>> rows(1 + trial % 2, std::vector<long long>(n));
        for (auto& r : rows) {
            for (auto& x : r) x = e(rng);
        }
        TorusLattice t = TorusLattice::saturate(rows, n);
        CHECK(TorusLattice::saturate(t.basis(), n) == t);  // idempotent
        for (const auto& p : span_points(t, 3)) {
            auto c = solve(transpose(to_rational(t.basis()), n), to_rational(p), t.rank());
            REQUIRE(c.has_value());
            for (const auto& ci : *c) CHECK(denominator(ci) == 1);
        }
        for (const auto& b : t.basis()) CHECK(subspace_contains(t.tangent(), to_rational(b)));
    }
}

TEST_CASE("projection is idempotent and symmetric") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> e(-4, 4);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 4;
        QMatrix rows(2, QVector(n));
        for (auto& r : rows) {
            for (auto& x : r) x = Rational(e(rng), 1 + std::abs(e(rng)));
        }
        RationalSubspace s(n, rows);
        QVector x(n), y(n);
        for (std::size_t k = 0; k < n; ++k) {
            x[k] = Rational(e(rng), 3);
            y[k] = Rational(e(rng), 5);
        }
        CHECK(s.project(s.project(x)) == s.project(x));
        CHECK(dot(s.project(x), y) == dot(x, s.project(y)));
    }
}

TEST_CASE("subspace_contains examples") {
    RationalSubspace diag(2, {QVector{1, 1}});
    CHECK(subspace_contains(diag, std::vector<double>{3, 3}, 0.0));
    CHECK_FALSE(subspace_contains(diag, std::vector<double>{1, -1}, 1e-9));
    RationalSubspace anti(2, {QVector{1, -1}});
    CHECK(subspace_contains(anti, std::vector<double>{std::log(2.0), -std::log(2.0)}, 1e-12));
}

TEST_CASE("phase_in_torus examples") {
    const double pi = std::numbers::pi;
    CHECK(phase_in_torus(TorusLattice::full(2), {1.234, -5.0}, 1e-9));
    TorusLattice anti = TorusLattice::saturate(std::vector<std::vector<long long>>{{1, -1}}, 2);
    CHECK(phase_in_torus(anti, {pi, pi}, 1e-9));
    CHECK_FALSE(phase_in_torus(anti, {pi / 2, 0.0}, 1e-9));
    CHECK_FALSE(phase_in_torus(TorusLattice::saturate(ZMatrix{}, 2), {0.1, 0.0}, 1e-9));
}

TEST_CASE("phase_in_torus agrees with the box search") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> e(-2, 2);
    std::uniform_real_distribution<double> u(-7.0, 7.0);
    int positives = 0;
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<std::vector<long long>> rows{{e(rng), e(rng), e(rng)}};
        TorusLattice t = TorusLattice::saturate(rows, 3);
        std::vector<double> theta(3);
        if (trial % 2 == 0) {
            // a point of t^R + 2 pi Z^n
            double c = u(rng);
            for (std::size_t k = 0; k < 3; ++k) {
                double g = t.rank() ? t.basis()[0][k].convert_to<double>() : 0.0;
                theta[k] = c * g + 2 * std::numbers::pi * e(rng);
            }
        } else {
            for (auto& x : theta) x = u(rng);
        }
        bool fast = phase_in_torus(t, theta, 1e-9);
        CHECK(fast == phase_box_search(t, theta, 1e-9));
        positives += fast;
    }
    CHECK(positives >= 30);
}

TEST_CASE("best_rational matches brute force") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        double x = u(rng);
        const long long bound = 1 + trial % 40;
        Rational q = best_rational(x, bound);
        CHECK(denominator(q) <= bound);
        double err = std::abs(q.convert_to<double>() - x);
        for (long long d = 1; d <= bound; ++d) {
            double p = std::round(x * static_cast<double>(d));
            CHECK(err <= std::abs(p / static_cast<double>(d) - x) + 1e-15);
        }
    }
    CHECK(best_rational(0.5, 10) == Rational(1, 2));
    CHECK(best_rational(std::numbers::pi, 113) == Rational(355, 113));
}

TEST_CASE("integer kernel and Hermite form") {
    ZMatrix m = zmat({{1, 1, 1}});
    ZMatrix k = integer_kernel(m, 3);
    CHECK(k.size() == 2);
    for (const auto& row : k) CHECK(row[0] + row[1] + row[2] == 0);
    CHECK(hermite_normal_form(zmat({{2, 4}, {1, 3}}), 2) == zmat({{1, 1}, {0, 2}}));
}
