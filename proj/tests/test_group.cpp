#include <cmath>
#include <set>

#include "doctest.h"
#include "orbithull/errors.hpp"
#include "orbithull/group.hpp"
#include "test_util.hpp"

using namespace orbithull;

namespace {

MonomialGroup perms(std::size_t n, std::vector<std::vector<std::size_t>> gens) {
    return MonomialGroup::from_permutations(n, gens);
}

}  // namespace

TEST_CASE("orbit partitions") {
    CHECK(orbit_partition(MonomialGroup::symmetric(3)) == Partition{{0, 1, 2}});
    CHECK(orbit_partition(perms(3, {{1, 0, 2}})) == Partition{{0, 1}, {2}});
    // <(123)(456)>: brute-force orbits of the cyclic group
    MonomialGroup c = perms(6, {{1, 2, 0, 4, 5, 3}});
    CHECK(c.order() == 3);
    Partition oracle;
    std::vector<bool> seen(6, false);
    for (std::size_t k = 0; k < 6; ++k) {
        if (seen[k]) continue;
        std::set<std::size_t> orbit;
        for (const auto& g : c.elements()) orbit.insert(g.perm()[k]);
        for (std::size_t j : orbit) seen[j] = true;
        oracle.emplace_back(orbit.begin(), orbit.end());
    }
    CHECK(orbit_partition(c) == oracle);
    CHECK(oracle == Partition{{0, 1, 2}, {3, 4, 5}});
}

TEST_CASE("full symmetric on orbits") {
    CHECK(full_symmetric_on_orbits(MonomialGroup::symmetric(4)));
    CHECK_FALSE(full_symmetric_on_orbits(MonomialGroup::cyclic(3)));
    MonomialGroup two = perms(4, {{1, 0, 2, 3}, {0, 1, 3, 2}});
    CHECK(two.order() == 4);
    CHECK(full_symmetric_on_orbits(two));
    CHECK_FALSE(full_symmetric_on_orbits(MonomialGroup::cyclic(4)));
    CHECK(full_symmetric_on_orbits(MonomialGroup::trivial(3)));
}

TEST_CASE("reflection rank") {
    RationalSubspace r3 = RationalSubspace::full(3);
    CHECK(reflection_rank(MonomialElement({1, 0, 2}), r3) == 1);
    CHECK(reflection_rank(MonomialElement({1, 2, 0}), r3) == 2);
    CHECK(reflection_rank(MonomialElement::identity(3), r3) == 0);
    MonomialGroup s4 = MonomialGroup::symmetric(4);
    RationalSubspace r4 = RationalSubspace::full(4);
    for (const auto& f : s4.elements()) {
        for (const auto& g : s4.elements()) {
            CHECK(reflection_rank(g.compose(f).compose(g.inverse()), r4) == reflection_rank(f, r4));
        }
    }
    RationalSubspace line(3, {QVector{1, 0, 0}});
    CHECK_THROWS(reflection_rank(MonomialElement({1, 0, 2}), line));
}

TEST_CASE("group closure and twists") {
    MonomialElement g({1, 0}, {TwistAngle::exact(Rational(1, 2)), TwistAngle::exact(0)});
    MonomialGroup f(2, {g});
    CHECK(f.order() == 4);  // (g)^2 = -1
    for (const auto& a : f.elements()) {
        for (const auto& b : f.elements()) CHECK(f.find(a.compose(b)) < f.order());
        CHECK(f.find(a.inverse()) < f.order());
    }
    CHECK(f.elements().front().is_identity());
    CHECK(MonomialGroup::symmetric(4).order() == 24);
    CHECK_THROWS(MonomialGroup(8, MonomialGroup::symmetric(8).generators(), 100));
}

TEST_CASE("normalize to a fixed point") {
    auto check_fixed = [](const FixedPointNormalization& r) {
        for (const auto& g : r.group.generators()) {
            CVector gu = g.apply(r.u);
            for (std::size_t k = 0; k < gu.size(); ++k) CHECK(std::abs(gu[k] - r.u[k]) <= 1e-10);
        }
    };
    auto r = normalize_to_fixed_point(MonomialGroup::symmetric(2), TorusLattice::full(2), real_vector({2, 1}));
    CHECK(std::abs(r.u[0]) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::abs(r.u[1]) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    check_fixed(r);

    auto same = normalize_to_fixed_point(MonomialGroup::trivial(2), TorusLattice::full(2), real_vector({2, 1}));
    CHECK(std::abs(same.u[0] - 2.0) <= 1e-12);
    CHECK(std::abs(same.u[1] - 1.0) <= 1e-12);

    auto anti = normalize_to_fixed_point(MonomialGroup::symmetric(2), lattice({{1, -1}}, 2), real_vector({2, 0.5}));
    CHECK(std::abs(anti.u[0] - 1.0) <= 1e-12);
    CHECK(std::abs(anti.u[1] - 1.0) <= 1e-12);
    check_fixed(anti);

    auto s3 = normalize_to_fixed_point(MonomialGroup::symmetric(3), TorusLattice::full(3),
                                       CVector{{3, 1}, {-2, 0.5}, {0, 1}});
    check_fixed(s3);

    CHECK_THROWS_AS(normalize_to_fixed_point(MonomialGroup::symmetric(2), lattice({{1, 1}}, 2), real_vector({1, 2})),
                    IncorViolation);
}

TEST_CASE("normalizes torus") {
    CHECK(normalizes_torus(MonomialGroup::symmetric(3), trace_zero(3)));
    CHECK_FALSE(normalizes_torus(MonomialGroup::symmetric(2), lattice({{1, 2}}, 2)));
}
