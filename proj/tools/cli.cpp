#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "orbithull/classify.hpp"
#include "orbithull/errors.hpp"
#include "orbithull/hull.hpp"
#include "orbithull/json_io.hpp"
#include "orbithull/oracle.hpp"
#include "orbithull/svg.hpp"
#include "orbithull/symdom.hpp"

namespace orbithull {

namespace {

struct Flags {
    std::string input;
    std::string hull_file;
    std::string svg;
    std::string z;
    std::string u;
    std::string matrix;
    std::string point;
    std::string v;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    std::optional<long long> max_den;
    std::optional<std::size_t> k;
    std::size_t n_points = 10000;
    std::size_t n_monomials = 50;
    bool as_json = false;
};

std::string read_text(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json(const std::string& path) { return parse_json_text(read_text(path)); }

ProblemSpec load_problem(const Flags& f) {
    if (f.input.empty()) throw ParseError("--input is required");
    ProblemSpec p = problem_from_json(read_json(f.input));
    if (f.tol) p.options.tol = *f.tol;
    if (f.max_den) p.options.max_denominator = *f.max_den;
    if (f.seed) p.seed = *f.seed;
    return p;
}

HullOptions options_only(const Flags& f) {
    HullOptions o;
    if (f.tol) o.tol = *f.tol;
    if (f.max_den) o.max_denominator = *f.max_den;
    return o;
}

/// Hull from --hull when given, otherwise built from --input.
OrbitHull load_hull(const Flags& f, HullOptions& opt, json& problem) {
    if (!f.hull_file.empty()) {
        opt = options_only(f);
        if (!f.input.empty()) problem = read_json(f.input);
        return hull_from_json(read_json(f.hull_file));
    }
    ProblemSpec p = load_problem(f);
    opt = p.options;
    problem = p.raw;
    return build_hull(p.lattice, p.group, p.v, opt);
}

CVector vector_arg(const std::string& text, const json& problem, const char* key) {
    if (!text.empty()) return cvector_from_json(parse_json_text(text));
    if (problem.is_object() && problem.contains(key)) return cvector_from_json(problem.at(key));
    throw ParseError(std::string("no ") + key + " given (flag or field \"" + key + "\")");
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

int cmd_hull(const Flags& f, std::ostream& out) {
    ProblemSpec p = load_problem(f);
    OrbitHull h = build_hull(p.lattice, p.group, p.v, p.options);
    if (!f.svg.empty()) {
        std::ofstream svg(f.svg);
        if (!svg) throw PreconditionError("cannot write " + f.svg);
        svg << hull_svg(h);
    }
    emit(out, to_json(h));
    return 0;
}

int cmd_member(const Flags& f, std::ostream& out) {
    HullOptions opt;
    json problem;
    OrbitHull h = load_hull(f, opt, problem);
    emit(out, to_json(membership(h, vector_arg(f.z, problem, "z"), opt.tol)));
    return 0;
}

int cmd_certificate(const Flags& f, std::ostream& out) {
    HullOptions opt;
    json problem;
    OrbitHull h = load_hull(f, opt, problem);
    emit(out, to_json(separating_certificate(h, vector_arg(f.z, problem, "z"), opt)));
    return 0;
}

int cmd_strip(const Flags& f, std::ostream& out) {
    ProblemSpec p = load_problem(f);
    emit(out, to_json(analytic_strip(p.lattice, p.v, vector_arg(f.u, p.raw, "u"), p.options.tol)));
    return 0;
}

int cmd_classify(const Flags& f, std::ostream& out) {
    if (f.input.empty()) throw ParseError("--input is required");
    json j = read_json(f.input);
    TorusLattice t = lattice_from_json(j.contains("lattice") ? j.at("lattice") : json(nullptr));
    MonomialGroup g = group_from_json(j.contains("group") ? j.at("group") : json(nullptr), t.n());
    PairReport r = classify_type(t, g);
    if (f.as_json) {
        emit(out, to_json(r));
        return 0;
    }
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    out << "generically connected  " << yn(r.generically_connected) << "\n";
    out << "generically closed     " << yn(r.generically_closed) << "\n";
    for (std::size_t i = 0; i < r.orbit_partition.size(); ++i) {
        out << "orbit " << i + 1 << "                ";
        out << "{";
        for (std::size_t j2 = 0; j2 < r.orbit_partition[i].size(); ++j2) {
            out << (j2 ? "," : "") << r.orbit_partition[i][j2] + 1;
        }
        out << "}  " << r.orbit_types[i] << "\n";
    }
    out << "type                   " << to_string(r.type) << "\n";
    out << "standard product       " << yn(r.standard_product) << "\n";
    out << "centralizer dim        " << r.centralizer_dim << "\n";
    return 0;
}

QMatrix rational_matrix(const json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of rows");
    QMatrix m;
    for (const auto& row : j) {
        if (!row.is_array()) throw ParseError(std::string(what) + " rows must be arrays");
        QVector r;
        for (const auto& x : row) r.push_back(parse_fraction(x));
        m.push_back(std::move(r));
    }
    return m;
}

int cmd_maico(const Flags& f, std::ostream& out) {
    if (f.input.empty()) throw ParseError("--input is required");
    json j = read_json(f.input);
    MaicoInput in;
    in.t_dim = j.at("t_dim").get<std::size_t>();
    in.lattice = rational_matrix(j.at("lattice"), "lattice");
    in.points = rational_matrix(j.at("K"), "K");
    if (j.contains("generators")) {
        for (const auto& g : j.at("generators")) in.generators.push_back(rational_matrix(g, "generator"));
    }
    MaicoResult r = construct_maico(in);
    emit(out, json{{"lattice", to_json(r.torus)}, {"group", to_json(r.group)}, {"v_condition", r.v_condition}});
    return 0;
}

int cmd_verify(const Flags& f, std::ostream& out) {
    ProblemSpec p = load_problem(f);
    OrbitHull h = build_hull(p.lattice, p.group, p.v, p.options);
    VerifyOptions vo;
    vo.n_points = f.n_points;
    vo.n_monomials = f.n_monomials;
    vo.seed = p.seed;
    vo.tol = p.options.tol;
    VerificationReport r = verify_hull(h, vo);
    emit(out, to_json(r));
    return r.ok() ? 0 : 3;
}

int cmd_symdom(const std::string& mode, const Flags& f, std::ostream& out) {
    const double tol = f.tol.value_or(1e-9);
    if (mode == "mu") {
        if (f.matrix.empty()) throw ParseError("--matrix is required");
        Eigen::MatrixXcd z = matrix_from_json(read_json(f.matrix));
        const auto r = static_cast<std::size_t>(std::min(z.rows(), z.cols()));
        json mus = json::array();
        for (std::size_t k = 1; k <= r; ++k) mus.push_back(mu_matrix(z, k));
        if (f.k) {
            emit(out, json{{"k", *f.k}, {"mu", mu_matrix(z, *f.k)}});
        } else {
            emit(out, json{{"mu", mus}});
        }
        return 0;
    }
    if (mode == "member") {
        if (f.matrix.empty() || f.point.empty()) throw ParseError("--matrix and --point are required");
        emit(out, to_json(member_symdom(matrix_from_json(read_json(f.matrix)), matrix_from_json(read_json(f.point)), tol)));
        return 0;
    }
    if (mode == "pk") {
        if (f.v.empty()) throw ParseError("--v is required");
        json vj = parse_json_text(f.v);
        std::vector<double> v;
        for (const auto& x : vj) v.push_back(x.get<double>());
        if (v.size() % 2 != 0 || v.empty()) throw ParseError("--v needs 2n Cartan coordinates");
        Sl2Product l(v.size() / 2);
        std::size_t k = f.k.value_or(1);
        PkResult pk = p_k_sl2n(l, v, k);
        CVector norms;
        for (std::size_t a = 0; a < l.n(); ++a) norms.emplace_back(std::hypot(v[2 * a], v[2 * a + 1]), 0.0);
        double mu = mu_polydisc(norms, k);
        emit(out, json{{"k", k}, {"p_k", pk.value}, {"degenerate", pk.degenerate},
                       {"four_k_mu_k_squared", std::pow(4.0, static_cast<double>(k)) * mu * mu}});
        return 0;
    }
    throw ParseError("unknown symdom mode \"" + mode + "\" (mu, member, pk)");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Log-polytope hulls of torus orbits with finite symmetry"};
    app.require_subcommand(1);
    app.fallthrough();
    Flags f;
    std::string symdom_mode;
    app.add_option("--tol", f.tol, "membership tolerance (default 1e-9)");
    app.add_option("--seed", f.seed, "random seed (default 42)");
    app.add_option("--max-denominator", f.max_den, "denominator bound for certificates (default 1e6)");

    auto with_input = [&](CLI::App* sub) { sub->add_option("--input", f.input, "problem description JSON"); };
    auto* hull = app.add_subcommand("hull", "facet description of the hull");
    with_input(hull);
    hull->add_option("--svg", f.svg, "write the log-polytope as SVG");
    auto* member = app.add_subcommand("member", "membership verdict for a point z");
    with_input(member);
    member->add_option("--hull", f.hull_file, "hull JSON produced by the hull command");
    member->add_option("--z", f.z, "point as JSON [[re, im], ...]");
    auto* cert = app.add_subcommand("certificate", "separating monomial for a point outside the hull");
    with_input(cert);
    cert->add_option("--hull", f.hull_file, "hull JSON produced by the hull command");
    cert->add_option("--z", f.z, "point as JSON [[re, im], ...]");
    auto* strip = app.add_subcommand("strip", "analytic strip joining v and u");
    with_input(strip);
    strip->add_option("--u", f.u, "endpoint as JSON [[re, im], ...]");
    auto* classify = app.add_subcommand("classify", "structural report on (T, F)");
    with_input(classify);
    classify->add_flag("--json", f.as_json, "emit JSON instead of a table");
    auto* maico = app.add_subcommand("construct-maico", "torus and group from a finite subset of a dual lattice");
    with_input(maico);
    auto* symdom = app.add_subcommand("symdom", "mu_k and p_k for symmetric domains");
    symdom->add_option("mode", symdom_mode, "mu, member or pk")->required();
    symdom->add_option("--matrix", f.matrix, "matrix JSON (rows of [re, im])");
    symdom->add_option("--point", f.point, "reference matrix JSON for member");
    symdom->add_option("-k", f.k, "index k");
    symdom->add_option("--v", f.v, "Cartan coordinates (x1, y1, x2, y2, ...) as JSON");
    auto* verify = app.add_subcommand("verify", "cross-check the hull against orbit samples");
    with_input(verify);
    verify->add_option("--points", f.n_points, "orbit samples (default 10000)");
    verify->add_option("--monomials", f.n_monomials, "random monomials (default 50)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (hull->parsed()) return cmd_hull(f, out);
        if (member->parsed()) return cmd_member(f, out);
        if (cert->parsed()) return cmd_certificate(f, out);
        if (strip->parsed()) return cmd_strip(f, out);
        if (classify->parsed()) return cmd_classify(f, out);
        if (maico->parsed()) return cmd_maico(f, out);
        if (symdom->parsed()) return cmd_symdom(symdom_mode, f, out);
        if (verify->parsed()) return cmd_verify(f, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const json::exception& e) {
        err << "error: malformed input: " << e.what() << "\n";
        return 1;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const InconsistencyError& e) {
        err << "error: internal inconsistency: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace orbithull
