#include "orbithull/json_io.hpp"

#include <cmath>
#include <string>

#include "orbithull/errors.hpp"

namespace orbithull {

namespace {

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::size_t as_size(const json& j, const char* what) {
    if (!j.is_number_integer() || j.get<long long>() < 0) {
        throw ParseError(std::string(what) + " must be a nonnegative integer");
    }
    return j.get<std::size_t>();
}

json int_vector(const ZVector& v) {
    json a = json::array();
    for (const auto& x : v) {
        if (abs(x) < Integer(1LL << 53)) {
            a.push_back(x.convert_to<long long>());
        } else {
            a.push_back(x.str());
        }
    }
    return a;
}

json double_matrix(const std::vector<std::vector<double>>& m) {
    json a = json::array();
    for (const auto& row : m) {
        json r = json::array();
        for (double x : row) r.push_back(num(x));
        a.push_back(std::move(r));
    }
    return a;
}

std::vector<double> double_vector(const json& j, std::size_t n, const char* what) {
    if (!j.is_array() || j.size() != n) throw ParseError(std::string(what) + " must be an array of length " + std::to_string(n));
    std::vector<double> out;
    for (const auto& x : j) {
        if (!x.is_number()) throw ParseError(std::string(what) + " must contain numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

}  // namespace

std::string fraction_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

Rational parse_fraction(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number()) return Rational(j.get<double>());
    if (!j.is_string()) throw ParseError("expected a fraction string or number");
    std::string s = j.get<std::string>();
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer p(s.substr(0, slash)), q(s.substr(slash + 1));
        if (q == 0) throw ParseError("zero denominator in \"" + s + "\"");
        return Rational(p, q);
    } catch (const std::runtime_error&) {
        throw ParseError("malformed fraction \"" + s + "\"");
    }
}

json to_json(const TorusLattice& t) {
    json basis = json::array();
    for (const auto& b : t.basis()) basis.push_back(int_vector(b));
    return json{{"n", t.n()}, {"basis", basis}};
}

TorusLattice lattice_from_json(const json& j) {
    const std::size_t n = as_size(field(j, "n"), "lattice n");
    const json& basis = field(j, "basis");
    if (!basis.is_array()) throw ParseError("lattice basis must be an array");
    ZMatrix rows;
    for (const auto& r : basis) {
        if (!r.is_array()) throw ParseError("lattice basis rows must be arrays");
        ZVector row;
        for (const auto& x : r) {
            if (x.is_number_integer()) {
                row.emplace_back(x.get<long long>());
            } else if (x.is_string()) {
                Rational q = parse_fraction(x);
                if (denominator(q) != 1) throw ParseError("lattice entries must be integers");
                row.push_back(numerator(q));
            } else {
                throw ParseError("lattice entries must be integers");
            }
        }
        rows.push_back(std::move(row));
    }
    return TorusLattice::saturate(rows, n);
}

json to_json(const MonomialGroup& f) {
    json gens = json::array();
    for (const auto& g : f.generators()) {
        json perm = json::array(), tw = json::array();
        for (auto p : g.perm()) perm.push_back(p + 1);
        for (const auto& a : g.twist()) {
            if (a.is_exact()) {
                tw.push_back(fraction_string(a.exact_turns()));
            } else {
                tw.push_back(a.turns());
            }
        }
        gens.push_back(json{{"perm", perm}, {"twist_angles_over_2pi", tw}});
    }
    return json{{"n", f.n()}, {"generators", gens}, {"order", f.order()}};
}

MonomialGroup group_from_json(const json& j, std::size_t n) {
    if (j.is_null()) return MonomialGroup::trivial(n);
    if (j.contains("n") && as_size(j.at("n"), "group n") != n) throw ParseError("group n does not match lattice n");
    if (!j.contains("generators")) return MonomialGroup::trivial(n);
    const json& gens = j.at("generators");
    if (!gens.is_array()) throw ParseError("group generators must be an array");
    std::vector<MonomialElement> out;
    for (const auto& g : gens) {
        const json& perm = field(g, "perm");
        if (!perm.is_array() || perm.size() != n) throw ParseError("perm must list " + std::to_string(n) + " images");
        std::vector<std::size_t> p;
        for (const auto& x : perm) {
            std::size_t img = as_size(x, "perm entry");
            if (img < 1 || img > n) throw ParseError("perm entries are 1-based images in 1.." + std::to_string(n));
            p.push_back(img - 1);
        }
        std::vector<TwistAngle> tw(n);
        if (g.contains("twist_angles_over_2pi")) {
            const json& t = g.at("twist_angles_over_2pi");
            if (!t.is_array() || t.size() != n) throw ParseError("twist_angles_over_2pi must have length " + std::to_string(n));
            for (std::size_t k = 0; k < n; ++k) {
                if (t[k].is_string() || t[k].is_number_integer()) {
                    tw[k] = TwistAngle::exact(parse_fraction(t[k]));
                } else if (t[k].is_number()) {
                    tw[k] = TwistAngle::from_turns(t[k].get<double>());
                } else {
                    throw ParseError("twist angles must be numbers or fraction strings");
                }
            }
        }
        out.emplace_back(p, tw);
    }
    return MonomialGroup(n, out);
}

json to_json(const PolyCone& c) {
    auto qm = [](const QMatrix& m) {
        json a = json::array();
        for (const auto& row : m) {
            json r = json::array();
            for (const auto& x : row) r.push_back(fraction_string(x));
            a.push_back(std::move(r));
        }
        return a;
    };
    QMatrix rays;
    for (const auto& r : c.rays) rays.push_back(to_rational(r));
    return json{{"rays", qm(rays)}, {"halfspaces", qm(c.halfspaces)}, {"equalities", qm(c.equalities)},
                {"dim", c.dim()}};
}

json to_json(const IdempotentSet& s) {
    json a = json::array();
    for (const auto& e : s.elements) a.push_back(e);
    return a;
}

json to_json(const CVector& z) {
    json a = json::array();
    for (const auto& x : z) a.push_back(json::array({x.real(), x.imag()}));
    return a;
}

CVector cvector_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("complex vector must be an array");
    CVector out;
    for (const auto& x : j) {
        if (x.is_number()) {
            out.emplace_back(x.get<double>(), 0.0);
        } else if (x.is_array() && x.size() == 2 && x[0].is_number() && x[1].is_number()) {
            out.emplace_back(x[0].get<double>(), x[1].get<double>());
        } else {
            throw ParseError("complex entries must be numbers or [re, im] pairs");
        }
    }
    return out;
}

Eigen::MatrixXcd matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("matrix must be a nonempty array of rows");
    const std::size_t rows = j.size();
    std::size_t cols = 0;
    Eigen::MatrixXcd m;
    for (std::size_t i = 0; i < rows; ++i) {
        CVector r = cvector_from_json(j[i]);
        if (i == 0) {
            cols = r.size();
            m.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
        }
        if (r.size() != cols || cols == 0) throw ParseError("matrix rows must have equal nonzero length");
        for (std::size_t c = 0; c < cols; ++c) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = r[c];
    }
    return m;
}

json to_json(const Facet& f) {
    json s = json::array();
    if (f.exact_normal) {
        for (long long x : *f.exact_normal) s.push_back(x);
    } else {
        for (double x : f.normal) s.push_back(x);
    }
    return json{{"s", s}, {"c", num(f.offset)}, {"c_rel", num(f.relative_offset)}, {"equality", f.equality},
                {"exact", f.exact_normal.has_value()}};
}

json to_json(const OrbitHull& h) {
    json facets = json::array();
    for (const auto& f : h.facets()) facets.push_back(to_json(f));
    json rays = json::array();
    for (const auto& r : h.recession().rays) {
        json row = json::array();
        for (const auto& x : r) row.push_back(x.str());
        rays.push_back(std::move(row));
    }
    std::vector<std::vector<double>> rel;
    for (auto i : h.q_vertices()) rel.push_back(h.points()[i]);
    return json{{"n", h.n()},
                {"lattice", to_json(h.torus())},
                {"group", to_json(h.group())},
                {"v", to_json(h.v())},
                {"facets", facets},
                {"vertices_log", double_matrix(h.vertices_log())},
                {"vertices_rel", double_matrix(rel)},
                {"rays", rays},
                {"idempotents", to_json(h.idempotents())},
                {"tightness_defect", h.tightness_defect()}};
}

OrbitHull hull_from_json(const json& j) {
    TorusLattice t = lattice_from_json(field(j, "lattice"));
    const std::size_t n = t.n();
    MonomialGroup f = group_from_json(j.contains("group") ? j.at("group") : json(nullptr), n);
    CVector v = cvector_from_json(field(j, "v"));
    if (v.size() != n) throw ParseError("v has wrong length");
    std::vector<double> logv(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        if (v[k] != 0.0) logv[k] = std::log(std::abs(v[k]));
    }

    std::vector<std::vector<double>> points;
    if (j.contains("vertices_rel")) {
        for (const auto& p : j.at("vertices_rel")) points.push_back(double_vector(p, n, "vertex"));
    } else {
        for (const auto& p : field(j, "vertices_log")) {
            std::vector<double> x = double_vector(p, n, "vertex");
            for (std::size_t k = 0; k < n; ++k) x[k] -= logv[k];
            points.push_back(std::move(x));
        }
    }

    std::vector<Facet> facets;
    const json& fs = field(j, "facets");
    if (!fs.is_array()) throw ParseError("facets must be an array");
    for (const auto& fj : fs) {
        Facet f;
        f.normal = double_vector(field(fj, "s"), n, "facet normal");
        for (double x : f.normal) {
            if (x < 0) throw ParseError("facet normals must be nonnegative");
        }
        if (fj.value("exact", false)) {
            std::vector<long long> ex;
            for (const auto& x : fj.at("s")) {
                if (!x.is_number_integer()) throw ParseError("exact facet normal must be integer");
                ex.push_back(x.get<long long>());
            }
            f.exact_normal = ex;
        }
        const json& c = field(fj, "c");
        if (!c.is_number()) throw ParseError("facet offset c must be a number");
        f.offset = c.get<double>();
        double base = 0.0;
        for (std::size_t k = 0; k < n; ++k) base += logv[k] * f.normal[k];
        f.relative_offset = f.offset - base;
        if (fj.contains("c_rel")) {
            double rel = fj.at("c_rel").get<double>();
            if (std::abs(rel - f.relative_offset) > 1e-9 * std::max(1.0, std::abs(f.offset))) {
                throw ParseError("facet offsets c and c_rel disagree");
            }
            f.relative_offset = rel;
        }
        f.equality = fj.value("equality", false);
        facets.push_back(std::move(f));
    }

    std::vector<ZVector> rays;
    for (const auto& r : field(j, "rays")) {
        ZVector row;
        for (const auto& x : r) {
            Rational q = parse_fraction(x);
            if (denominator(q) != 1) throw ParseError("rays must be integer vectors");
            row.push_back(numerator(q));
        }
        rays.push_back(std::move(row));
    }
    return hull_from_parts(t, f, v, std::move(points), std::move(facets), std::move(rays));
}

json to_json(const Certificate& c) {
    json j{{"kind", c.kind == Certificate::Kind::Monomial ? "monomial" : "binomial"},
           {"polynomial", c.polynomial()},
           {"log_value", num(c.log_value)},
           {"log_sup", num(c.log_sup)},
           {"log_gap", num(c.log_gap())},
           {"value", num(c.value())},
           {"sup", num(c.sup())}};
    if (c.kind == Certificate::Kind::Monomial) {
        j["exponent"] = c.exponent;
    } else {
        j["plus"] = c.plus;
        j["minus"] = c.minus;
    }
    return j;
}

json to_json(const MembershipVerdict& v) {
    json j{{"status", to_string(v.status)},
           {"tolerance", v.tolerance},
           {"max_violation", num(v.max_violation)},
           {"reason", v.reason},
           {"facet", v.facet ? json(*v.facet + 1) : json(nullptr)},
           {"certificate", v.certificate ? to_json(*v.certificate) : json(nullptr)}};
    return j;
}

json to_json(const StripDescriptor& s) {
    return json{{"xi", s.xi},
                {"v", to_json(s.v)},
                {"u", to_json(s.u)},
                {"degenerate", s.degenerate},
                {"periodic", s.periodic},
                {"period", s.period ? json(*s.period) : json(nullptr)},
                {"direction", s.direction ? json(*s.direction) : json(nullptr)}};
}

json to_json(const PairReport& r) {
    json parts = json::array();
    for (const auto& k : r.orbit_partition) {
        json a = json::array();
        for (auto i : k) a.push_back(i + 1);
        parts.push_back(std::move(a));
    }
    return json{{"generically_connected", r.generically_connected},
                {"generically_closed", r.generically_closed},
                {"orbit_partition", parts},
                {"orbit_types", r.orbit_types},
                {"type", to_string(r.type)},
                {"standard_product", r.standard_product},
                {"centralizer_dim", r.centralizer_dim}};
}

json to_json(const VerificationReport& r) {
    json fails = json::array();
    for (const auto& f : r.failures) {
        fails.push_back(json{{"check", f.check},
                             {"witness", to_json(f.witness)},
                             {"inequality", f.inequality},
                             {"violation", num(f.violation)}});
    }
    return json{{"checks_run", r.checks_run},
                {"failures", fails},
                {"max_violation", num(r.max_violation)},
                {"seed", r.seed},
                {"tolerance", r.tolerance},
                {"ok", r.ok()}};
}

ProblemSpec problem_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("problem description must be a JSON object");
    ProblemSpec p;
    p.raw = j;
    p.lattice = lattice_from_json(field(j, "lattice"));
    p.group = group_from_json(j.contains("group") ? j.at("group") : json(nullptr), p.lattice.n());
    p.v = cvector_from_json(field(j, "v"));
    if (p.v.size() != p.lattice.n()) {
        throw ParseError("v has " + std::to_string(p.v.size()) + " entries, lattice n = " + std::to_string(p.lattice.n()));
    }
    if (j.contains("options")) {
        const json& o = j.at("options");
        if (!o.is_object()) throw ParseError("options must be an object");
        if (o.contains("tol")) p.options.tol = o.at("tol").get<double>();
        if (o.contains("max_denominator")) p.options.max_denominator = o.at("max_denominator").get<long long>();
        if (o.contains("seed")) p.seed = o.at("seed").get<std::uint64_t>();
    }
    return p;
}

json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace orbithull
