#include "orbithull/hull.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "hull_internal.hpp"
#include "orbithull/errors.hpp"
#include "orbithull/lp.hpp"

namespace orbithull {

namespace {

constexpr long long exact_normal_bound = 1000000;

std::vector<double> log_moduli(const CVector& z) {
    std::vector<double> out(z.size(), 0.0);
    for (std::size_t k = 0; k < z.size(); ++k) {
        if (z[k] != 0.0) out[k] = std::log(std::abs(z[k]));
    }
    return out;
}

double norm2(const std::vector<double>& x) {
    double s = 0.0;
    for (double e : x) s += e * e;
    return std::sqrt(s);
}

double dotd(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/**
 * Minimum-norm s >= 0 with B s = phi.  The optimum satisfies s_S = B_S^T y on
 * its support S, so candidate supports are enumerated and the smallest
 * feasible candidate kept.
 */
QVector nonnegative_lift(const TorusLattice& t, const QVector& phi) {
    const std::size_t n = t.n();
    const std::size_t d = t.rank();
    QVector natural = t.represent_functional(phi);
    if (std::all_of(natural.begin(), natural.end(), [](const Rational& x) { return x >= 0; })) return natural;

    std::vector<std::size_t> cols;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < d; ++i) {
            if (t.basis()[i][k] != 0) {
                cols.push_back(k);
                break;
            }
        }
    }
    const std::size_t m = cols.size();
    if (m > 24) throw PreconditionError("facet lift: too many coordinates for support enumeration");

    std::optional<QVector> best;
    Rational best_norm = 0;
    for (unsigned long mask = 1; mask < (1UL << m); ++mask) {
        std::vector<std::size_t> sup;
        for (std::size_t j = 0; j < m; ++j) {
            if (mask & (1UL << j)) sup.push_back(cols[j]);
        }
        QMatrix gram(d, QVector(d, Rational(0)));
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = i; j < d; ++j) {
                Integer acc = 0;
                for (auto k : sup) acc += t.basis()[i][k] * t.basis()[j][k];
                gram[i][j] = gram[j][i] = Rational(acc);
            }
        }
        auto y = solve(gram, phi, d);
        if (!y) continue;
        QVector s(n, Rational(0));
        bool ok = true;
        for (auto k : sup) {
            for (std::size_t i = 0; i < d; ++i) {
                if (t.basis()[i][k] != 0) s[k] += (*y)[i] * Rational(t.basis()[i][k]);
            }
            if (s[k] < 0) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        Rational nn = dot(s, s);
        if (!best || nn < best_norm) {
            best = std::move(s);
            best_norm = nn;
        }
    }
    if (!best) throw InconsistencyError("facet functional has no nonnegative lift");
    return *best;
}

Facet make_facet(const QVector& s, bool equality) {
    Facet f;
    f.equality = equality;
    ZVector p = primitive(s);
    Integer mx = 0;
    for (const auto& e : p) mx = std::max(mx, Integer(abs(e)));
    if (mx <= exact_normal_bound) {
        std::vector<long long> ex;
        for (const auto& e : p) ex.push_back(e.convert_to<long long>());
        f.normal.assign(ex.begin(), ex.end());
        f.exact_normal = std::move(ex);
    } else {
        f.normal = to_double(s);
        double nn = norm2(f.normal);
        for (auto& e : f.normal) e /= nn;
    }
    return f;
}

bool facet_less(const Facet& a, const Facet& b) {
    if (a.normal != b.normal) return a.normal < b.normal;
    return a.relative_offset < b.relative_offset;
}

std::vector<double> thetas(const CVector& z, const CVector& v, const std::vector<std::size_t>& idx) {
    std::vector<double> out;
    for (auto k : idx) out.push_back(std::arg(z[k]) - std::arg(v[k]));
    return out;
}

/// Relation of t (extended by zeros from idx to R^n) maximizing |<a, y>| / |a|.
ZVector worst_relation(const TorusLattice& t, const std::vector<double>& y, const std::vector<std::size_t>& idx,
                       std::size_t n, bool phase) {
    const auto& rel = t.relations();
    std::vector<double> res = phase ? phase_residual(t, y) : std::vector<double>{};
    std::size_t best = 0;
    double best_val = -1.0;
    for (std::size_t i = 0; i < rel.size(); ++i) {
        std::vector<double> a = to_double(rel[i]);
        double val = phase ? std::abs(res[i]) : std::abs(dotd(a, y));
        val /= norm2(a);
        if (val > best_val) {
            best_val = val;
            best = i;
        }
    }
    ZVector out(n, Integer(0));
    if (rel.empty()) return out;
    for (std::size_t j = 0; j < idx.size(); ++j) out[idx[j]] = rel[best][j];
    return out;
}

}  // namespace

std::string to_string(Status s) {
    switch (s) {
        case Status::Inside: return "Inside";
        case Status::Boundary: return "Boundary";
        case Status::Outside: return "Outside";
    }
    return "?";
}

namespace detail {

TorusLattice restrict_lattice(const TorusLattice& t, const std::vector<std::size_t>& active) {
    ZMatrix rows;
    for (const auto& b : t.basis()) {
        ZVector r;
        for (auto k : active) r.push_back(b[k]);
        rows.push_back(std::move(r));
    }
    return TorusLattice::saturate(rows, active.size());
}

}  // namespace detail

std::vector<std::vector<double>> OrbitHull::vertices_log() const {
    std::vector<std::vector<double>> out;
    for (auto i : q_vertices_) {
        std::vector<double> x = points_[i];
        for (std::size_t k = 0; k < x.size(); ++k) x[k] += logv_[k];
        out.push_back(std::move(x));
    }
    return out;
}

std::vector<bool> check_incor(const TorusLattice& t, const MonomialGroup& f, const CVector& v, double tol) {
    const std::size_t n = t.n();
    if (v.size() != n || f.n() != n) throw PreconditionError("check_incor: dimension mismatch");
    for (const auto& x : v) {
        if (x == 0.0) throw PreconditionError("v must lie in (ℂ*)ⁿ");
    }
    std::vector<double> logv = log_moduli(v);
    std::vector<bool> out;
    for (const auto& g : f.generators()) {
        CVector w = g.apply(v);
        std::vector<double> xi(n), th(n);
        for (std::size_t k = 0; k < n; ++k) {
            xi[k] = std::log(std::abs(w[k])) - logv[k];
            th[k] = std::arg(w[k]) - std::arg(v[k]);
        }
        out.push_back(subspace_contains(t.tangent(), xi, tol) && phase_in_torus(t, th, tol));
    }
    return out;
}

OrbitHull build_hull(const TorusLattice& t, const MonomialGroup& f, const CVector& v, const HullOptions& opt) {
    const std::size_t n = t.n();
    if (f.n() != n || v.size() != n) {
        throw PreconditionError("dimension mismatch: lattice n = " + std::to_string(n) + ", group n = " +
                                std::to_string(f.n()) + ", |v| = " + std::to_string(v.size()));
    }
    for (const auto& x : v) {
        if (x == 0.0) throw PreconditionError("v must lie in (ℂ*)ⁿ");
    }
    for (std::size_t i = 0; i < f.generators().size(); ++i) {
        const auto& g = f.generators()[i];
        for (const auto& b : t.tangent().basis()) {
            if (!t.tangent().contains(g.act(b))) {
                throw PreconditionError("generator " + std::to_string(i + 1) + " does not normalize the torus");
            }
        }
    }
    // weights (columns of the basis) must span t*
    if (rank(transpose(to_rational(t.basis()), n), t.rank()) != t.rank()) {
        throw PreconditionError("stabilizer of v in T is not trivial");
    }

    FixedPointNormalization norm = normalize_to_fixed_point(f, t, v, opt.tol);
    std::vector<double> logv = log_moduli(v);
    QVector y = t.tangent().project(dyadic(logv));

    QMatrix exact;
    std::vector<std::vector<double>> floating;
    for (const auto& g : norm.group.elements()) {
        QVector gy = g.act(y);
        for (std::size_t k = 0; k < n; ++k) gy[k] -= y[k];
        std::vector<double> gx = g.act(logv);
        for (std::size_t k = 0; k < n; ++k) gx[k] -= logv[k];
        exact.push_back(std::move(gy));
        floating.push_back(std::move(gx));
    }
    return assemble_hull(t, norm.group, v, exact, floating, opt);
}

OrbitHull hull_T_orbit(const TorusLattice& t, const CVector& v, const HullOptions& opt) {
    const std::size_t n = t.n();
    if (v.size() != n) throw PreconditionError("hull_T_orbit: dimension mismatch");
    std::vector<std::size_t> zeros;
    for (std::size_t k = 0; k < n; ++k) {
        if (v[k] == 0.0) zeros.push_back(k);
    }
    QMatrix origin{QVector(n, Rational(0))};
    std::vector<std::vector<double>> origin_d{std::vector<double>(n, 0.0)};
    if (zeros.empty()) return assemble_hull(t, MonomialGroup::trivial(n), v, origin, origin_d, opt);

    // T acting on the support of v only
    ZMatrix rows = t.basis();
    for (auto& r : rows) {
        for (auto k : zeros) r[k] = 0;
    }
    TorusLattice tv = TorusLattice::saturate(rows, n);
    return assemble_hull(tv, MonomialGroup::trivial(n), v, origin, origin_d, opt);
}

OrbitHull assemble_hull(const TorusLattice& t, const MonomialGroup& ftilde, const CVector& v,
                        const QMatrix& exact_points, const std::vector<std::vector<double>>& float_points,
                        const HullOptions& opt) {
    const std::size_t n = t.n();
    const std::size_t d = t.rank();
    if (v.size() != n || ftilde.n() != n) throw PreconditionError("assemble_hull: dimension mismatch");
    if (exact_points.size() != float_points.size() || exact_points.empty()) {
        throw PreconditionError("assemble_hull: point lists must be nonempty and aligned");
    }

    OrbitHull h;
    h.torus_ = t;
    h.group_ = ftilde;
    h.v_ = v;
    h.logv_ = log_moduli(v);
    h.vsupp_.resize(n);
    for (std::size_t k = 0; k < n; ++k) h.vsupp_[k] = v[k] != 0.0;

    QMatrix pts;
    std::set<QVector> seen;
    for (std::size_t i = 0; i < exact_points.size(); ++i) {
        if (exact_points[i].size() != n || float_points[i].size() != n) {
            throw PreconditionError("assemble_hull: point has wrong dimension");
        }
        if (!seen.insert(exact_points[i]).second) continue;
        if (!t.tangent().contains(exact_points[i])) throw InconsistencyError("log-point outside t^R");
        pts.push_back(exact_points[i]);
        h.points_.push_back(float_points[i]);
    }

    h.cone_ = compute_C_T(t);
    h.idempotents_ = idempotents(h.cone_);

    const std::size_t dim = d + 1;
    QMatrix qgens;
    for (const auto& x : pts) {
        QVector c = t.intrinsic(x);
        c.push_back(Rational(1));
        qgens.push_back(std::move(c));
    }
    QMatrix pgens = qgens;
    for (const auto& r : h.cone_.rays) {
        QVector c = t.intrinsic(to_rational(r));
        c.push_back(Rational(0));
        pgens.push_back(std::move(c));
    }

    ConeHRep hq = cone_facets(qgens, dim);
    h.q_vertices_ = extreme_generators(qgens, hq, dim);
    if (h.q_vertices_.empty()) h.q_vertices_.push_back(0);  // single point
    ConeHRep hp = cone_facets(pgens, dim);
    for (auto i : extreme_generators(pgens, hp, dim)) {
        if (i < pts.size()) h.p_vertices_.push_back(i);
    }
    if (h.p_vertices_.empty()) h.p_vertices_.push_back(0);

    // intrinsic inequalities <phi, c> <= beta
    struct Ineq {
        QVector phi;
        Rational beta;
        bool equality;
    };
    std::vector<Ineq> ineqs;
    for (const auto& a : hp.facets) {
        QVector phi(d);
        for (std::size_t i = 0; i < d; ++i) phi[i] = Rational(a[i]);
        Rational b(a[d]);
        bool touches = false;
        for (const auto& g : qgens) {
            if (dot(to_rational(a), g).is_zero()) {
                touches = true;
                break;
            }
        }
        if (!touches || is_zero(phi)) continue;  // face at infinity
        ineqs.push_back({phi, -b, false});
    }
    for (const auto& l : hp.lineality) {
        QVector phi(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(d));
        if (is_zero(phi)) continue;
        QVector neg(d);
        for (std::size_t i = 0; i < d; ++i) neg[i] = -phi[i];
        ineqs.push_back({phi, -l[d], true});
        ineqs.push_back({neg, l[d], true});
    }

    double defect = 0.0;
    for (const auto& iq : ineqs) {
        Facet f = make_facet(nonnegative_lift(t, iq.phi), iq.equality);
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& x : h.points_) best = std::max(best, dotd(x, f.normal));
        f.relative_offset = best;
        f.offset = best + dotd(h.logv_, f.normal);
        double nn = norm2(f.normal);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            QVector c = t.intrinsic(pts[i]);
            if (dot(iq.phi, c) == iq.beta) {
                defect = std::max(defect, std::abs(dotd(h.points_[i], f.normal) - best) / nn);
            }
        }
        h.facets_.push_back(std::move(f));
    }
    std::sort(h.facets_.begin(), h.facets_.end(), facet_less);
    h.tightness_defect_ = defect;
    (void)opt;
    return h;
}

OrbitHull hull_from_parts(const TorusLattice& t, const MonomialGroup& ftilde, const CVector& v,
                          std::vector<std::vector<double>> points, std::vector<Facet> facets,
                          std::vector<ZVector> rays) {
    const std::size_t n = t.n();
    if (v.size() != n || ftilde.n() != n) throw ParseError("hull: dimension mismatch");
    OrbitHull h;
    h.torus_ = t;
    h.group_ = ftilde;
    h.v_ = v;
    h.logv_ = log_moduli(v);
    h.vsupp_.resize(n);
    for (std::size_t k = 0; k < n; ++k) h.vsupp_[k] = v[k] != 0.0;
    for (const auto& p : points) {
        if (p.size() != n) throw ParseError("hull: vertex has wrong dimension");
    }
    for (const auto& f : facets) {
        if (f.normal.size() != n) throw ParseError("hull: facet normal has wrong dimension");
    }
    if (points.empty()) throw ParseError("hull: no vertices");
    h.points_ = std::move(points);
    for (std::size_t i = 0; i < h.points_.size(); ++i) h.q_vertices_.push_back(i);
    h.p_vertices_ = h.q_vertices_;
    h.cone_ = compute_C_T(t);
    std::sort(rays.begin(), rays.end());
    if (rays != h.cone_.rays) throw ParseError("hull: recession rays do not match the lattice");
    h.idempotents_ = idempotents(h.cone_);
    h.facets_ = std::move(facets);
    std::sort(h.facets_.begin(), h.facets_.end(), facet_less);
    return h;
}

MembershipVerdict membership(const OrbitHull& h, const CVector& z, double tol) {
    const std::size_t n = h.n();
    if (z.size() != n) throw PreconditionError("membership: z has " + std::to_string(z.size()) +
                                               " coordinates, expected " + std::to_string(n));
    MembershipVerdict out;
    out.tolerance = tol;
    HullOptions copt;
    copt.tol = tol;

    for (std::size_t k = 0; k < n; ++k) {
        if (!h.support()[k] && z[k] != 0.0) {
            out.status = Status::Outside;
            out.reason = "support";
            out.certificate = detail::coordinate_certificate(k, z);
            return out;
        }
    }

    std::vector<std::size_t> active, sv;
    for (std::size_t k = 0; k < n; ++k) {
        if (z[k] != 0.0) active.push_back(k);
        if (h.support()[k]) sv.push_back(k);
    }

    const TorusLattice* lat = &h.torus();
    TorusLattice restricted;
    if (active != sv) {
        bool realized = false;
        for (const auto& iota : h.idempotents().elements) {
            std::vector<std::size_t> kept;
            for (auto k : sv) {
                if (iota[k] == 1) kept.push_back(k);
            }
            if (kept == active) {
                realized = true;
                break;
            }
        }
        if (!realized) {
            out.status = Status::Outside;
            out.reason = "support";
            out.certificate = detail::support_certificate(h, z, active);
            return out;
        }
        restricted = detail::restrict_lattice(h.torus(), active);
        lat = &restricted;
    } else if (active.size() != n) {
        restricted = detail::restrict_lattice(h.torus(), active);
        lat = &restricted;
    }

    std::vector<double> xi_a;
    for (auto k : active) xi_a.push_back(std::log(std::abs(z[k])) - h.log_v()[k]);
    if (lat->tangent().distance(xi_a) > tol) {
        out.status = Status::Outside;
        out.reason = "torus";
        out.certificate = detail::binomial_certificate(worst_relation(*lat, xi_a, active, n, false), z, h.v());
        return out;
    }
    std::vector<double> th = thetas(z, h.v(), active);
    if (phase_distance(*lat, th) > tol) {
        out.status = Status::Outside;
        out.reason = "phase";
        out.certificate = detail::binomial_certificate(worst_relation(*lat, th, active, n, true), z, h.v());
        return out;
    }

    if (active == sv) {
        std::vector<double> xi(n, 0.0);
        for (std::size_t j = 0; j < active.size(); ++j) xi[active[j]] = xi_a[j];
        for (std::size_t i = 0; i < h.facets().size(); ++i) {
            const Facet& f = h.facets()[i];
            double viol = (dotd(xi, f.normal) - f.relative_offset) / norm2(f.normal);
            if (viol > out.max_violation) {
                out.max_violation = viol;
                out.facet = i;
            }
        }
        if (h.facets().empty()) {
            out.status = Status::Inside;
            return out;
        }
        if (out.max_violation > tol) {
            out.status = Status::Outside;
            out.reason = "facet";
            out.certificate = detail::monomial_certificate(h, z, active, copt);
        } else if (out.max_violation >= -tol) {
            out.status = Status::Boundary;
            out.reason = "facet";
        } else {
            out.status = Status::Inside;
            out.facet.reset();
        }
        return out;
    }

    // some coordinates vanish: find c in t (intrinsic) matching xi on the active
    // coordinates and as deep inside P_X as possible
    const TorusLattice& t = h.torus();
    const std::size_t d = t.rank();
    const auto m = static_cast<Eigen::Index>(active.size());
    Eigen::MatrixXd bt(m, static_cast<Eigen::Index>(d));
    QMatrix bt_exact(active.size(), QVector(d));
    for (std::size_t j = 0; j < active.size(); ++j) {
        for (std::size_t i = 0; i < d; ++i) {
            bt(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = t.basis()[i][active[j]].convert_to<double>();
            bt_exact[j][i] = Rational(t.basis()[i][active[j]]);
        }
    }
    Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(xi_a.data(), m);
    Eigen::VectorXd c0 = d > 0 ? Eigen::VectorXd(bt.completeOrthogonalDecomposition().solve(rhs)) : Eigen::VectorXd();
    QMatrix ker = null_space(bt_exact, d);
    const std::size_t w = ker.size();

    LinearProgram<double> lp;
    lp.num_vars = w + 1;
    lp.objective.assign(w + 1, 0.0);
    lp.objective[w] = 1.0;
    for (const auto& f : h.facets()) {
        std::vector<double> phi(d, 0.0);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t k = 0; k < n; ++k) phi[i] += t.basis()[i][k].convert_to<double>() * f.normal[k];
        }
        std::vector<double> row(w + 1, 0.0);
        for (std::size_t j = 0; j < w; ++j) {
            for (std::size_t i = 0; i < d; ++i) row[j] += ker[j][i].convert_to<double>() * phi[i];
        }
        row[w] = norm2(f.normal);
        double base = 0.0;
        for (std::size_t i = 0; i < d; ++i) base += phi[i] * c0(static_cast<Eigen::Index>(i));
        lp.add_le(std::move(row), f.relative_offset - base);
    }
    std::vector<double> cap(w + 1, 0.0);
    cap[w] = 1.0;
    lp.add_le(cap, 1.0);
    LpResult<double> res = solve_lp(lp);
    if (res.status != LpStatus::Optimal) throw InconsistencyError("membership: depth LP did not reach an optimum");
    const double depth = res.value;
    out.max_violation = -depth;
    if (depth > tol) {
        out.status = Status::Inside;
    } else if (depth >= -tol) {
        out.status = Status::Boundary;
        out.reason = "facet";
    } else {
        out.status = Status::Outside;
        out.reason = "facet";
        out.certificate = detail::monomial_certificate(h, z, active, copt);
    }
    return out;
}

}  // namespace orbithull
