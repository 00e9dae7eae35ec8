#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "orbithull/json_io.hpp"
#include "orbithull/lp.hpp"
#include "orbithull/oracle.hpp"
#include "test_util.hpp"

using namespace orbithull;

namespace {

OrbitHull bidisc() { return build_hull(TorusLattice::full(2), MonomialGroup::symmetric(2), real_vector({2, 1})); }

}  // namespace

TEST_CASE("orbit samples") {
    CHECK(sample_orbit(TorusLattice::full(2), MonomialGroup::trivial(2), real_vector({1, 1}), 0, 1).empty());
    auto circle = sample_orbit(TorusLattice::full(1), MonomialGroup::trivial(1), real_vector({1}), 500, 3);
    REQUIRE(circle.size() == 500);
    for (const auto& z : circle) CHECK(std::abs(std::abs(z[0]) - 1.0) <= 1e-14);

    auto pts = sample_orbit(TorusLattice::full(2), MonomialGroup::symmetric(2), real_vector({2, 1}), 100, 5);
    int swapped = 0;
    for (const auto& z : pts) {
        CHECK(std::max(std::abs(z[0]), std::abs(z[1])) == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(std::abs(z[0]) * std::abs(z[1]) == doctest::Approx(2.0).epsilon(1e-12));
        swapped += std::abs(z[1]) > std::abs(z[0]);
    }
    CHECK(swapped > 0);
    CHECK(swapped < 100);
}

TEST_CASE("empirical sup") {
    std::vector<CVector> pts{real_vector({2, 1}), real_vector({1, 2})};
    CHECK(empirical_sup(pts, {1, 1}) == 2.0);
    CHECK(empirical_sup(pts, {1, 0}) == 2.0);
    CHECK(empirical_log_sup(pts, {0, 3}) == doctest::Approx(3 * std::log(2.0)));

    OrbitHull h = bidisc();
    auto samples = sample_orbit(h.torus(), h.group(), h.v(), 10000, 42);
    double predicted = -1e300;
    for (std::size_t q : h.q_vertices()) {
        predicted = std::max(predicted, 2 * (h.points()[q][0] + h.log_v()[0]) + 3 * (h.points()[q][1] + h.log_v()[1]));
    }
    CHECK(std::abs(empirical_log_sup(samples, {2, 3}) - predicted) <= 1e-9);
    CHECK(empirical_sup(samples, {2, 3}) == doctest::Approx(8.0).epsilon(1e-9));
}

TEST_CASE("verification passes on correct hulls and detects tampering") {
    OrbitHull h = bidisc();
    VerificationReport r = verify_hull(h);
    CHECK(r.ok());
    CHECK(r.checks_run > 10000);
    CHECK(r.max_violation <= r.tolerance);

    OrbitHull poly = build_hull(TorusLattice::full(3), MonomialGroup::trivial(3), real_vector({1.5, 1, 0.5}));
    CHECK(verify_hull(poly).ok());

    OrbitHull c3 = build_hull(TorusLattice::full(3), MonomialGroup::cyclic(3), real_vector({3, 2, 1}));
    CHECK(verify_hull(c3).ok());

    for (std::size_t i = 0; i < h.facets().size(); ++i) {
        OrbitHull bad = h;
        bad.mutable_facets()[i].offset += 0.1;
        bad.mutable_facets()[i].relative_offset += 0.1;
        VerificationReport rb = verify_hull(bad);
        CHECK_FALSE(rb.ok());
        bool saw_c = false;
        for (const auto& f : rb.failures) saw_c = saw_c || f.check == "c";
        CHECK(saw_c);
    }
}

TEST_CASE("reports are deterministic across seeds and thread counts") {
    OrbitHull h = build_hull(TorusLattice::full(3), MonomialGroup::symmetric(3), real_vector({3, 2, 1}));
    VerifyOptions opt;
    opt.n_points = 5000;
    ::setenv("ORBITHULL_THREADS", "1", 1);
    CHECK(oracle_threads() == 1);
    std::string one = to_json(verify_hull(h, opt)).dump();
    auto s1 = sample_orbit(h.torus(), h.group(), h.v(), 3000, 9);
    ::setenv("ORBITHULL_THREADS", "4", 1);
    CHECK(oracle_threads() == 4);
    std::string four = to_json(verify_hull(h, opt)).dump();
    auto s4 = sample_orbit(h.torus(), h.group(), h.v(), 3000, 9);
    ::unsetenv("ORBITHULL_THREADS");
    CHECK(one == four);
    CHECK(s1 == s4);
    opt.seed = 7;
    CHECK(to_json(verify_hull(h, opt)).dump() != one);
}

TEST_CASE("vertex prediction equals the LP maximum over P_X") {
    // exact on dyadic data: max <x, s> over Q_X + C_T is attained at a vertex when s is in the dual cone
    OrbitHull h = build_hull(TorusLattice::full(3), MonomialGroup::cyclic(3), real_vector({3, 2, 1}));
    const auto& pts = h.points();
    const auto& rays = h.recession().rays;
    for (const std::vector<long long>& s : std::vector<std::vector<long long>>{{1, 2, 3}, {0, 0, 1}, {5, 1, 0}, {2, 2, 2}}) {
        QVector sq = to_rational(s);
        Rational vertex_max = dot(dyadic(pts[0]), sq);
        for (const auto& p : pts) vertex_max = std::max(vertex_max, dot(dyadic(p), sq));

        LinearProgram<Rational> lp;
        lp.num_vars = pts.size() + rays.size();
        lp.objective.assign(lp.num_vars, 0);
        for (std::size_t i = 0; i < pts.size(); ++i) lp.objective[i] = dot(dyadic(pts[i]), sq);
        for (std::size_t r = 0; r < rays.size(); ++r) lp.objective[pts.size() + r] = dot(to_rational(rays[r]), sq);
        std::vector<Rational> ones(lp.num_vars, 0);
        for (std::size_t i = 0; i < pts.size(); ++i) ones[i] = 1;
        lp.add_eq(ones, 1);
        for (std::size_t i = 0; i < lp.num_vars; ++i) {
            std::vector<Rational> row(lp.num_vars, 0);
            row[i] = -1;
            lp.add_le(row, 0);
        }
        auto res = solve_lp(lp);
        REQUIRE(res.status == LpStatus::Optimal);
        CHECK(res.value == vertex_max);
    }
}
