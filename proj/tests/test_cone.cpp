#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "orbithull/cone.hpp"
#include "orbithull/lp.hpp"
#include "test_util.hpp"

using namespace orbithull;

namespace {

std::set<Idempotent> as_set(const IdempotentSet& s) { return {s.elements.begin(), s.elements.end()}; }

/// Oracle: a subset of rays spans a face iff some functional is 0 on it and < 0 on the other rays
/// (an LP with slack; the cone is pointed, so functionals on R^n suffice).
bool spans_face(const std::vector<ZVector>& rays, const std::vector<std::size_t>& subset, std::size_t n) {
    LinearProgram<Rational> lp;
    lp.num_vars = n + 1;  // a, slack
    lp.objective.assign(n + 1, 0);
    lp.objective[n] = 1;
    for (std::size_t r = 0; r < rays.size(); ++r) {
        std::vector<Rational> row(n + 1, 0);
        for (std::size_t k = 0; k < n; ++k) row[k] = Rational(rays[r][k]);
        if (std::find(subset.begin(), subset.end(), r) != subset.end()) {
            lp.add_eq(row, 0);
        } else {
            row[n] = 1;
            lp.add_le(row, 0);
        }
    }
    std::vector<Rational> cap(n + 1, 0);
    cap[n] = 1;
    lp.add_le(cap, 1);
    auto res = solve_lp(lp);
    return res.status == LpStatus::Optimal && res.value > 0;
}

}  // namespace

TEST_CASE("C_T examples") {
    PolyCone full = compute_C_T(TorusLattice::full(2));
    CHECK(full.rays.size() == 2);
    std::set<ZVector> rays(full.rays.begin(), full.rays.end());
    CHECK(rays == std::set<ZVector>{zmat({{-1, 0}})[0], zmat({{0, -1}})[0]});

    CHECK(compute_C_T(lattice({{1, -1}}, 2)).is_zero());

    PolyCone scalar = compute_C_T(lattice({{1, 1}}, 2));
    REQUIRE(scalar.rays.size() == 1);
    CHECK(scalar.rays[0] == zmat({{-1, -1}})[0]);

    CHECK(compute_C_T(TorusLattice::saturate(ZMatrix{}, 3)).is_zero());
}

TEST_CASE("idempotent examples") {
    CHECK(as_set(idempotents(compute_C_T(TorusLattice::full(2)))) ==
          std::set<Idempotent>{{1, 1}, {0, 1}, {1, 0}, {0, 0}});
    CHECK(as_set(idempotents(compute_C_T(lattice({{1, 1}}, 2)))) == std::set<Idempotent>{{1, 1}, {0, 0}});
    CHECK(as_set(idempotents(compute_C_T(lattice({{1, -1}}, 2)))) == std::set<Idempotent>{{1, 1}});
    CHECK(as_set(idempotents(compute_C_T(TorusLattice::saturate(ZMatrix{}, 2)))) == std::set<Idempotent>{{1, 1}});
}

TEST_CASE("face counts") {
    CHECK(face_lattice(compute_C_T(TorusLattice::full(2))).size() == 4);
    CHECK(face_lattice(compute_C_T(lattice({{1, 1}}, 2))).size() == 2);
    PolyCone octant = compute_C_T(TorusLattice::full(3));
    auto faces = face_lattice(octant);
    CHECK(faces.size() == 8);
    // every subset of the three rays spans a face
    for (unsigned mask = 0; mask < 8; ++mask) {
        std::vector<std::size_t> subset;
        for (std::size_t r = 0; r < 3; ++r) {
            if (mask >> r & 1) subset.push_back(r);
        }
        CHECK(spans_face(octant.rays, subset, 3));
    }
    for (std::size_t i = 1; i < faces.size(); ++i) CHECK(faces[i - 1].dim <= faces[i].dim);
}

TEST_CASE("random lattices: duality, semigroup, face oracle, limit law") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> e(-2, 2);
    int nonzero = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 3 + trial % 2;
        const std::size_t d = 1 + trial % 3;
        std::vector<std::vector<long long>> rows(d, std::vector<long long>(n));
        for (auto& r : rows) {
            for (auto& x : r) x = e(rng);
        }
        TorusLattice t = TorusLattice::saturate(rows, n);
        PolyCone c = compute_C_T(t);
        IdempotentSet is = idempotents(c);
        nonzero += !c.is_zero();

        for (const auto& ray : c.rays) {
            CHECK(t.tangent().contains(to_rational(ray)));
            for (const auto& x : ray) CHECK(x <= 0);
            CHECK(c.contains(to_rational(ray)));
        }
        CHECK(is.contains(Idempotent(n, 1)));
        CHECK(is.elements.size() == is.faces.size());
        CHECK(as_set(is).size() == is.elements.size());
        for (const auto& a : is.elements) {
            for (const auto& b : is.elements) {
                Idempotent ab(n);
                for (std::size_t k = 0; k < n; ++k) ab[k] = a[k] * b[k];
                CHECK(is.contains(ab));
            }
        }
        for (std::size_t f = 0; f < is.faces.size(); ++f) {
            const Face& face = is.faces[f];
            if (!face.rays.empty()) CHECK(spans_face(c.rays, face.rays, n));
            // relative interior point: sum of the face rays
            std::vector<double> xi(n, 0.0);
            for (std::size_t r : face.rays) {
                for (std::size_t k = 0; k < n; ++k) xi[k] += c.rays[r][k].convert_to<double>();
            }
            for (std::size_t k = 0; k < n; ++k) {
                CHECK(std::abs(std::exp(50.0 * xi[k]) - is.elements[f][k]) <= 1e-12);
            }
        }
        // rays not in a face are never contained in the span of a face (face count matches the oracle)
        if (c.rays.size() <= 6) {
            std::size_t oracle_faces = 0;
            for (unsigned mask = 0; mask < (1u << c.rays.size()); ++mask) {
                std::vector<std::size_t> subset;
                for (std::size_t r = 0; r < c.rays.size(); ++r) {
                    if (mask >> r & 1) subset.push_back(r);
                }
                oracle_faces += spans_face(c.rays, subset, n);
            }
            CHECK(oracle_faces == is.faces.size());
        }
    }
    CHECK(nonzero >= 10);
}

TEST_CASE("H-representation recomputed from rays matches") {
    PolyCone c = compute_C_T(lattice({{1, 0, 1}, {0, 1, 1}}, 3));
    QMatrix gens;
    for (const auto& r : c.rays) gens.push_back(to_rational(r));
    ConeHRep h = cone_facets(gens, 3);
    for (const auto& r : c.rays) {
        for (const auto& a : h.facets) CHECK(dot(to_rational(a), to_rational(r)) <= 0);
    }
    CHECK(extreme_generators(gens, h, 3).size() == c.rays.size());
}
