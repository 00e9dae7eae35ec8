#include <random>

#include "doctest.h"
#include "orbithull/classify.hpp"
#include "orbithull/cone.hpp"
#include "orbithull/errors.hpp"
#include "test_util.hpp"

using namespace orbithull;

namespace {

MonomialGroup s2xs2() { return MonomialGroup::from_permutations(4, {{1, 0, 2, 3}, {0, 1, 3, 2}}); }

/// Oracle: rank of the lattice basis together with the orbit indicators.
bool connected_oracle(const TorusLattice& t, const MonomialGroup& f) {
    QMatrix rows = to_rational(t.basis());
    for (const auto& orbit : orbit_partition(f)) {
        QVector e(t.n(), 0);
        for (auto k : orbit) e[k] = 1;
        rows.push_back(e);
    }
    return rank(rows, t.n()) == t.n();
}

/// Smallest F-invariant lattice containing the given rows.
TorusLattice symmetrize(const std::vector<std::vector<long long>>& rows, const MonomialGroup& f) {
    ZMatrix all;
    for (const auto& r : rows) {
        QVector q = to_rational(r);
        for (const auto& g : f.elements()) {
            QVector m = g.act(q);
            ZVector z;
            for (const auto& x : m) z.push_back(numerator(x));
            all.push_back(z);
        }
    }
    return TorusLattice::saturate(all, f.n());
}

}  // namespace

TEST_CASE("generic connectedness and closedness examples") {
    CHECK(generically_connected(TorusLattice::full(3), MonomialGroup::cyclic(3)));
    CHECK(generically_connected(lattice({{1, -1}}, 2), MonomialGroup::symmetric(2)));
    CHECK_FALSE(generically_connected(lattice({{1, 1}}, 2), MonomialGroup::symmetric(2)));

    CHECK(generically_closed(lattice({{1, -1}}, 2), MonomialGroup::symmetric(2)));
    CHECK_FALSE(generically_closed(TorusLattice::full(3), MonomialGroup::symmetric(3)));
    CHECK_FALSE(generically_closed(lattice({{1, 1}}, 2), MonomialGroup::symmetric(2)));
    CHECK_THROWS_AS(generically_closed(lattice({{1, 2}}, 2), MonomialGroup::symmetric(2)), PreconditionError);
}

TEST_CASE("types") {
    for (std::size_t n : {2u, 3u, 4u}) {
        CHECK(classify_type(TorusLattice::full(n), MonomialGroup::symmetric(n)).type == PairType::A);
        PairReport b = classify_type(trace_zero(n), MonomialGroup::symmetric(n));
        CHECK(b.type == PairType::B);
        CHECK(b.generically_closed);
        CHECK(b.standard_product);
    }
    PairReport mixed = classify_type(lattice({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, -1}}, 4), s2xs2());
    CHECK(mixed.type == PairType::ProductMixed);
    CHECK(mixed.orbit_types == std::vector<std::string>{"A", "B"});
    CHECK(mixed.centralizer_dim == 2);
    CHECK(mixed.standard_product);

    PairReport none = classify_type(lattice({{1, 1}}, 2), MonomialGroup::symmetric(2));
    CHECK(none.type == PairType::NotApplicable);
    CHECK_FALSE(none.standard_product);

    PairReport cyc = classify_type(TorusLattice::full(3), MonomialGroup::cyclic(3));
    CHECK(cyc.type == PairType::A);
    CHECK_FALSE(cyc.standard_product);

    CHECK(to_string(PairType::ProductMixed) == "ProductMixed");
}

TEST_CASE("standard products") {
    CHECK(is_standard_product(TorusLattice::full(3), MonomialGroup::symmetric(3)));
    CHECK_FALSE(is_standard_product(TorusLattice::full(3), MonomialGroup::cyclic(3)));
    CHECK(is_standard_product(trace_zero(2), MonomialGroup::symmetric(2)));
    // both orbits restrict to type A, but the torus is a proper subtorus of the product
    TorusLattice coupled = lattice({{1, -1, 0, 0}, {0, 0, 1, -1}, {1, 1, -1, -1}}, 4);
    CHECK(classify_type(coupled, s2xs2()).orbit_types == std::vector<std::string>{"A", "A"});
    CHECK_FALSE(is_standard_product(coupled, s2xs2()));
}

TEST_CASE("random pairs: both routes agree") {
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> e(-2, 2);
    const std::vector<MonomialGroup> groups{MonomialGroup::symmetric(3), MonomialGroup::cyclic(3),
                                            MonomialGroup::cyclic(4), s2xs2(), MonomialGroup::symmetric(4),
                                            MonomialGroup::from_permutations(5, {{1, 2, 0, 4, 3}})};
    int closed = 0, open = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const MonomialGroup& f = groups[trial % groups.size()];
        std::vector<std::vector<long long>> rows(1 + trial % 2, std::vector<long long>(f.n()));
        for (auto& r : rows) {
            for (auto& x : r) x = e(rng);
        }
        TorusLattice t = symmetrize(rows, f);
        REQUIRE(normalizes_torus(f, t));
        bool gc = generically_closed(t, f);
        CHECK(gc == compute_C_T(t).is_zero());
        (gc ? closed : open) += 1;
        bool conn = generically_connected(t, f);
        CHECK(conn == connected_oracle(t, f));
        if (conn) {
            PairReport r = classify_type(t, f);
            CHECK(r.type != PairType::NotApplicable);
            if (r.standard_product) CHECK(r.type != PairType::NotApplicable);
        }
    }
    CHECK(closed > 0);
    CHECK(open > 0);
}

TEST_CASE("construct_maico") {
    MaicoInput b;
    b.t_dim = 1;
    b.lattice = {{1}};
    b.points = {{1}, {-1}};
    b.generators = {{{-1}}};
    MaicoResult rb = construct_maico(b);
    CHECK(rb.torus.basis() == zmat({{1, -1}}));
    CHECK(rb.group.order() == 2);
    CHECK_FALSE(rb.v_condition.empty());
    CHECK(classify_type(rb.torus, rb.group).type == PairType::B);

    MaicoInput a;
    a.t_dim = 3;
    a.lattice = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    a.points = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    a.generators = {{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}, {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}};
    MaicoResult ra = construct_maico(a);
    CHECK(ra.torus == TorusLattice::full(3));
    CHECK(ra.group.order() == 6);
    CHECK(classify_type(ra.torus, ra.group).type == PairType::A);

    MaicoInput w;
    w.t_dim = 1;
    w.lattice = {{1}};
    w.points = {{1}, {2}};
    MaicoResult rw = construct_maico(w);
    CHECK(rw.torus.basis() == zmat({{1, 2}}));
    CHECK(rw.group.order() == 1);

    MaicoInput coarse = b;
    coarse.points = {{2}, {-2}};
    CHECK_THROWS_AS(construct_maico(coarse), PreconditionError);
    MaicoInput moved = w;
    moved.generators = {{{-1}}};
    CHECK_THROWS_AS(construct_maico(moved), PreconditionError);
    MaicoInput half = b;
    half.points = {{Rational(1, 2)}, {-1}};
    CHECK_THROWS_AS(construct_maico(half), PreconditionError);
}

TEST_CASE("rigidity probe") {
    CHECK(normals_rigidity_probe(TorusLattice::full(3), MonomialGroup::symmetric(3)));
    CHECK_FALSE(normals_rigidity_probe(TorusLattice::full(3), MonomialGroup::cyclic(3)));
    CHECK(normals_rigidity_probe(lattice({{1, -1}}, 2), MonomialGroup::symmetric(2)));
    CHECK(normals_rigidity_probe(lattice({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, -1}}, 4), s2xs2()));
    CHECK_THROWS_AS(normals_rigidity_probe(lattice({{1, 1}}, 2), MonomialGroup::symmetric(2)), PreconditionError);
}
