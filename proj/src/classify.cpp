#include "orbithull/classify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "orbithull/cone.hpp"
#include "orbithull/errors.hpp"
#include "orbithull/hull.hpp"
#include "orbithull/lp.hpp"

namespace orbithull {

namespace {

QMatrix orbit_indicators(const Partition& p, std::size_t n) {
    QMatrix out;
    for (const auto& k : p) {
        QVector e(n, Rational(0));
        for (auto i : k) e[i] = 1;
        out.push_back(std::move(e));
    }
    return out;
}

/// Fixed space of the permutation parts, as the kernel of the stacked (pi_g - I).
QMatrix fixed_space(const MonomialGroup& f) {
    const std::size_t n = f.n();
    QMatrix rows;
    for (const auto& g : f.generators()) {
        for (std::size_t k = 0; k < n; ++k) {
            QVector r(n, Rational(0));
            r[g.preimage(k)] += 1;
            r[k] -= 1;
            if (!is_zero(r)) rows.push_back(std::move(r));
        }
    }
    return null_space(rows, n);
}

void require_same_n(const TorusLattice& t, const MonomialGroup& f) {
    if (t.n() != f.n()) throw PreconditionError("lattice and group act on different dimensions");
}

std::size_t restricted_rank(const TorusLattice& t, const std::vector<std::size_t>& k) {
    QMatrix rows;
    for (const auto& b : t.basis()) {
        QVector r;
        for (auto i : k) r.emplace_back(b[i]);
        rows.push_back(std::move(r));
    }
    return rank(rows, k.size());
}

std::string orbit_label(const TorusLattice& t, const std::vector<std::size_t>& k) {
    const std::size_t r = restricted_rank(t, k);
    if (r == k.size()) return "A";
    if (r + 1 != k.size()) return "other";
    for (const auto& b : t.basis()) {
        Integer s = 0;
        for (auto i : k) s += b[i];
        if (s != 0) return "other";
    }
    return "B";
}

}  // namespace

std::string to_string(PairType t) {
    switch (t) {
        case PairType::A: return "A";
        case PairType::B: return "B";
        case PairType::ProductMixed: return "ProductMixed";
        case PairType::NotApplicable: return "NotApplicable";
    }
    return "?";
}

bool generically_connected(const TorusLattice& t, const MonomialGroup& f) {
    require_same_n(t, f);
    const std::size_t n = t.n();
    QMatrix a = to_rational(t.basis());
    QMatrix b = a;
    for (auto& e : orbit_indicators(orbit_partition(f), n)) a.push_back(std::move(e));
    for (auto& e : fixed_space(f)) b.push_back(std::move(e));
    const bool by_orbits = rank(a, n) == n;
    const bool by_fixed = rank(b, n) == n;
    if (by_orbits != by_fixed) throw InconsistencyError("generic connectedness: orbit and fixed-space routes disagree");
    return by_orbits;
}

bool generically_closed(const TorusLattice& t, const MonomialGroup& f) {
    require_same_n(t, f);
    if (!normalizes_torus(f, t)) throw PreconditionError("F does not normalize T");
    const std::size_t n = t.n();
    const std::size_t d = t.rank();
    const bool cone_zero = compute_C_T(t).is_zero();

    // x = B^T c with x >= 0, x fixed by F, sum x = 1
    LinearProgram<Rational> lp;
    lp.num_vars = d;
    lp.objective.assign(d, Rational(0));
    auto column = [&](std::size_t k) {
        QVector r(d);
        for (std::size_t i = 0; i < d; ++i) r[i] = Rational(t.basis()[i][k]);
        return r;
    };
    QVector total(d, Rational(0));
    for (std::size_t k = 0; k < n; ++k) {
        QVector r = column(k);
        for (std::size_t i = 0; i < d; ++i) {
            total[i] += r[i];
            r[i] = -r[i];
        }
        lp.add_le(std::move(r), Rational(0));
    }
    for (const auto& g : f.generators()) {
        for (std::size_t k = 0; k < n; ++k) {
            QVector a = column(g.preimage(k));
            QVector b = column(k);
            for (std::size_t i = 0; i < d; ++i) a[i] -= b[i];
            if (!is_zero(a)) lp.add_eq(std::move(a), Rational(0));
        }
    }
    lp.add_eq(total, Rational(1));
    const bool lp_closed = d == 0 || solve_lp(lp).status == LpStatus::Infeasible;
    if (cone_zero != lp_closed) throw InconsistencyError("generic closedness: recession cone and LP routes disagree");
    return cone_zero;
}

PairReport classify_type(const TorusLattice& t, const MonomialGroup& f) {
    require_same_n(t, f);
    const std::size_t n = t.n();
    PairReport r;
    r.generically_connected = generically_connected(t, f);
    r.generically_closed = generically_closed(t, f);
    r.orbit_partition = orbit_partition(f);
    r.centralizer_dim = r.orbit_partition.size();
    for (const auto& k : r.orbit_partition) r.orbit_types.push_back(orbit_label(t, k));
    if (!r.generically_connected) return r;

    // t^0 = sum over orbits of the trace-zero subspaces
    for (const auto& k : r.orbit_partition) {
        for (std::size_t i = 0; i + 1 < k.size(); ++i) {
            QVector e(n, Rational(0));
            e[k[i]] = 1;
            e[k[i + 1]] = -1;
            if (!t.tangent().contains(e)) {
                throw InconsistencyError("generically connected pair whose torus misses the trace-zero part of orbit " +
                                         std::to_string(k[0] + 1));
            }
        }
    }

    bool all_a = true, all_b = true;
    for (const auto& lbl : r.orbit_types) {
        all_a = all_a && lbl == "A";
        all_b = all_b && lbl == "B";
    }
    r.type = all_a ? PairType::A : all_b ? PairType::B : PairType::ProductMixed;

    std::size_t sum = 0;
    bool labelled = true;
    for (std::size_t i = 0; i < r.orbit_partition.size(); ++i) {
        sum += restricted_rank(t, r.orbit_partition[i]);
        labelled = labelled && r.orbit_types[i] != "other";
    }
    r.standard_product = labelled && sum == t.rank() && full_symmetric_on_orbits(f);
    return r;
}

bool is_standard_product(const TorusLattice& t, const MonomialGroup& f) { return classify_type(t, f).standard_product; }

MaicoResult construct_maico(const MaicoInput& in) {
    const std::size_t d = in.t_dim;
    if (in.lattice.size() != d) throw ParseError("L must have t_dim basis vectors");
    for (const auto& l : in.lattice) {
        if (l.size() != d) throw ParseError("lattice vector has wrong dimension");
    }
    if (rank(in.lattice, d) != d) throw PreconditionError("L is not a full-rank lattice");
    const std::size_t n = in.points.size();
    if (n == 0) throw PreconditionError("K is empty");

    // lambda_x(q) = <q, x>; integer for q in L*
    ZMatrix dual;  // K in the basis dual to the lattice basis
    for (const auto& q : in.points) {
        if (q.size() != d) throw ParseError("point of K has wrong dimension");
        ZVector c;
        for (const auto& l : in.lattice) {
            Rational v = dot(q, l);
            if (denominator(v) != 1) throw PreconditionError("K is not contained in L*");
            c.push_back(numerator(v));
        }
        dual.push_back(std::move(c));
    }
    ZMatrix h = hermite_normal_form(dual, d);
    bool unimodular = h.size() == d;
    for (std::size_t i = 0; unimodular && i < d; ++i) unimodular = abs(h[i][i]) == 1;
    if (!unimodular) throw PreconditionError("K does not generate L*");

    ZMatrix rows(d, ZVector(n));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t k = 0; k < n; ++k) rows[i][k] = dual[k][i];
    }
    TorusLattice t = TorusLattice::saturate(rows, n);

    std::vector<std::vector<std::size_t>> perms;
    for (std::size_t g = 0; g < in.generators.size(); ++g) {
        const QMatrix& m = in.generators[g];
        if (m.size() != d) throw ParseError("group matrix has wrong shape");
        std::vector<std::size_t> p(n);
        std::vector<bool> hit(n, false);
        for (std::size_t k = 0; k < n; ++k) {
            QVector img = mat_vec(m, in.points[k]);
            auto it = std::find(in.points.begin(), in.points.end(), img);
            if (it == in.points.end()) {
                throw PreconditionError("generator " + std::to_string(g + 1) + " does not preserve K");
            }
            p[k] = static_cast<std::size_t>(it - in.points.begin());
            if (hit[p[k]]) throw PreconditionError("generator " + std::to_string(g + 1) + " is not injective on K");
            hit[p[k]] = true;
        }
        perms.push_back(std::move(p));
    }
    MaicoResult out{t, MonomialGroup::from_permutations(n, perms), ""};

    std::string cond = "v in (C*)^" + std::to_string(n);
    for (const auto& k : orbit_partition(out.group)) {
        for (std::size_t i = 1; i < k.size(); ++i) {
            cond += ", v" + std::to_string(k[0] + 1) + " = v" + std::to_string(k[i] + 1);
        }
    }
    out.v_condition = cond;
    return out;
}

bool normals_rigidity_probe(const TorusLattice& t, const MonomialGroup& f, int trials, std::uint64_t seed) {
    require_same_n(t, f);
    if (!generically_connected(t, f)) throw PreconditionError("rigidity probe needs a generically connected pair");
    const std::size_t n = t.n();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(1.0, 2.0);
    const std::size_t distinct_perms = f.permutations().size();

    auto signature = [&](const OrbitHull& h) {
        std::vector<std::vector<double>> out;
        for (const auto& fc : h.facets()) {
            std::vector<double> p = t.tangent().project(fc.normal);
            double nn = 0.0;
            for (double x : p) nn += x * x;
            nn = std::sqrt(nn);
            for (auto& x : p) x = nn > 0 ? x / nn : 0.0;
            out.push_back(std::move(p));
        }
        std::sort(out.begin(), out.end());
        return out;
    };

    std::vector<std::vector<double>> reference;
    for (int trial = 0; trial < trials; ++trial) {
        std::optional<OrbitHull> h;
        for (int attempt = 0; attempt < 5 && !h; ++attempt) {
            CVector v(n);
            std::set<double> seen;
            for (std::size_t k = 0; k < n; ++k) {
                double x = unif(rng);
                seen.insert(x);
                v[k] = x;
            }
            if (seen.size() != n) continue;
            OrbitHull cand = build_hull(t, f, v);
            if (cand.points().size() != distinct_perms) continue;
            h = std::move(cand);
        }
        if (!h) throw DegenerateInput("rigidity probe: no generic v found after 5 samples");
        auto sig = signature(*h);
        if (trial == 0) {
            reference = std::move(sig);
            continue;
        }
        if (sig.size() != reference.size()) return false;
        for (std::size_t i = 0; i < sig.size(); ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                if (std::abs(sig[i][k] - reference[i][k]) > 1e-7) return false;
            }
        }
    }
    return true;
}

}  // namespace orbithull
