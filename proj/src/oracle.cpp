#include "orbithull/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>
#include <utility>

namespace orbithull {

namespace {

constexpr std::size_t chunk_size = 1024;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) { return splitmix64(seed ^ splitmix64(stream + 1)); }

std::vector<double> log_abs(const CVector& z) {
    std::vector<double> out(z.size());
    for (std::size_t k = 0; k < z.size(); ++k) out[k] = std::log(std::abs(z[k]));
    return out;
}

double dotd(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// log|p(z)| for a certificate polynomial.
/// log|z^e| and arg(z^e), so large exponents do not overflow.
std::pair<double, double> log_polar_monomial(const CVector& z, const std::vector<long long>& e) {
    double la = 0.0, ph = 0.0;
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0) continue;
        la += static_cast<double>(e[k]) * std::log(std::abs(z[k]));
        ph += static_cast<double>(e[k]) * std::arg(z[k]);
    }
    return {la, ph};
}

double certificate_log_abs(const Certificate& c, const CVector& z, const CVector& v) {
    if (c.kind == Certificate::Kind::Monomial) return log_polar_monomial(z, c.exponent).first;
    // log|A - B| with A = z^plus v^minus, B = z^minus v^plus
    auto [za, zp] = log_polar_monomial(z, c.plus);
    auto [vm, vmp] = log_polar_monomial(v, c.minus);
    auto [zm, zmp] = log_polar_monomial(z, c.minus);
    auto [vp, vpp] = log_polar_monomial(v, c.plus);
    const double la = za + vm, lb = zm + vp;
    if (std::isinf(la) && la < 0) return lb;
    if (std::isinf(lb) && lb < 0) return la;
    const double big = std::max(la, lb);
    const std::complex<double> diff =
        std::polar(std::exp(la - big), zp + vmp) - std::polar(std::exp(lb - big), zmp + vpp);
    return big + std::log(std::abs(diff));
}

std::string describe(const std::vector<double>& s, double c) {
    std::ostringstream os;
    os.precision(17);
    os << "<log|z|, (";
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << ")> <= " << c;
    return os.str();
}

template <class F>
void parallel_for(std::size_t count, F&& body) {
    const unsigned threads = std::min<unsigned>(oracle_threads(), static_cast<unsigned>(std::max<std::size_t>(count, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += threads) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

unsigned oracle_threads() {
    if (const char* env = std::getenv("ORBITHULL_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<CVector> sample_orbit(const TorusLattice& t, const MonomialGroup& f, const CVector& v, std::size_t n_points,
                                  std::uint64_t seed) {
    const std::size_t n = t.n();
    std::vector<CVector> out(n_points);
    const std::size_t chunks = (n_points + chunk_size - 1) / chunk_size;
    const auto& elems = f.elements();
    std::vector<std::vector<double>> basis;
    for (const auto& b : t.basis()) basis.push_back(to_double(b));

    parallel_for(chunks, [&](std::size_t c) {
        std::mt19937_64 rng(stream_seed(seed, c));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
        const std::size_t end = std::min(n_points, (c + 1) * chunk_size);
        for (std::size_t i = c * chunk_size; i < end; ++i) {
            std::vector<double> eta(n, 0.0);
            for (const auto& b : basis) {
                double u = unit(rng);
                for (std::size_t k = 0; k < n; ++k) eta[k] += 2.0 * std::numbers::pi * u * b[k];
            }
            CVector w(n);
            for (std::size_t k = 0; k < n; ++k) w[k] = std::polar(1.0, eta[k]) * v[k];
            out[i] = elems[pick(rng)].apply(w);
        }
    });
    return out;
}

double empirical_log_sup(const std::vector<CVector>& points, const std::vector<long long>& s) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& z : points) {
        double acc = 0.0;
        for (std::size_t k = 0; k < s.size(); ++k) {
            if (s[k] == 0) continue;
            acc += static_cast<double>(s[k]) * std::log(std::abs(z[k]));
        }
        best = std::max(best, acc);
    }
    return best;
}

double empirical_sup(const std::vector<CVector>& points, const std::vector<long long>& s) {
    return std::exp(empirical_log_sup(points, s));
}

VerificationReport verify_hull(const OrbitHull& h, const VerifyOptions& opt) {
    const std::size_t n = h.n();
    const TorusLattice& t = h.torus();
    VerificationReport rep;
    rep.seed = opt.seed;
    rep.tolerance = opt.tol;
    auto note = [&](double v) { rep.max_violation = std::max(rep.max_violation, v); };

    const std::vector<CVector> samples = sample_orbit(t, h.group(), h.v(), opt.n_points, opt.seed);
    std::vector<std::vector<double>> sample_logs;
    sample_logs.reserve(samples.size());
    for (const auto& z : samples) sample_logs.push_back(log_abs(z));

    // (a) orbit samples are never Outside
    std::vector<MembershipVerdict> verdicts(samples.size());
    parallel_for(samples.size(), [&](std::size_t i) { verdicts[i] = membership(h, samples[i], opt.tol); });
    for (std::size_t i = 0; i < samples.size(); ++i) {
        ++rep.checks_run;
        if (std::isfinite(verdicts[i].max_violation)) note(verdicts[i].max_violation);
        if (verdicts[i].status == Status::Outside) {
            rep.failures.push_back({"a", samples[i], "orbit point reported outside (" + verdicts[i].reason + ")",
                                    verdicts[i].max_violation});
        }
    }

    std::mt19937_64 rng(stream_seed(opt.seed, 0xb0b));
    std::uniform_int_distribution<int> exps(0, 5);

    // (b) empirical monomial suprema against the vertex formula
    const auto vlog = h.vertices_log();
    for (std::size_t m = 0; m < opt.n_monomials && !samples.empty(); ++m) {
        std::vector<long long> s(n, 0);
        bool nonzero = false;
        while (!nonzero) {
            for (auto& e : s) {
                e = exps(rng);
                nonzero = nonzero || e != 0;
            }
        }
        std::vector<double> sd(s.begin(), s.end());
        double predicted = -std::numeric_limits<double>::infinity();
        for (const auto& x : vlog) predicted = std::max(predicted, dotd(x, sd));
        double emp = empirical_log_sup(samples, s);
        ++rep.checks_run;
        note((emp - predicted) / std::max(1.0, std::abs(predicted)));
        if (emp > predicted + opt.tol * std::max(1.0, std::abs(predicted))) {
            rep.failures.push_back({"b", {}, "empirical sup exceeds " + describe(sd, predicted), emp - predicted});
        } else if (emp < predicted - opt.sampling_slack) {
            rep.failures.push_back({"b", {}, "empirical sup far below " + describe(sd, predicted), predicted - emp});
        }
    }

    // (c) points pushed just beyond each facet are Outside with a sound certificate
    for (std::size_t i = 0; i < h.facets().size() && !samples.empty(); ++i) {
        const Facet& fc = h.facets()[i];
        std::size_t arg = 0;
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < samples.size(); ++j) {
            double val = dotd(sample_logs[j], fc.normal);
            if (val > best) {
                best = val;
                arg = j;
            }
        }
        std::vector<double> ps = t.tangent().project(fc.normal);
        double pss = dotd(ps, fc.normal);
        double ns = std::sqrt(dotd(fc.normal, fc.normal));
        ++rep.checks_run;
        // the facet must be supported: its offset is attained on the orbit
        const double slack = fc.offset - best;
        if (slack > opt.sampling_slack) {
            rep.failures.push_back({"c", samples[arg], "orbit stays below " + describe(fc.normal, fc.offset), slack});
            continue;
        }
        if (pss <= 0.0) {
            rep.failures.push_back({"c", {}, "facet normal orthogonal to t: " + describe(fc.normal, fc.offset), 0.0});
            continue;
        }
        double alpha = 2.0 * opt.tol * ns / pss;
        CVector z(n);
        for (std::size_t k = 0; k < n; ++k) {
            z[k] = std::polar(std::exp(sample_logs[arg][k] + alpha * ps[k]), std::arg(samples[arg][k]));
        }
        MembershipVerdict mv = membership(h, z, opt.tol);
        if (mv.status != Status::Outside || !mv.certificate) {
            rep.failures.push_back({"c", z, "point beyond " + describe(fc.normal, fc.offset) + " reported " +
                                                to_string(mv.status),
                                    2.0 * opt.tol});
            continue;
        }
        const Certificate& cert = *mv.certificate;
        double value = certificate_log_abs(cert, z, h.v());
        double emp = -std::numeric_limits<double>::infinity();
        for (const auto& w : samples) emp = std::max(emp, certificate_log_abs(cert, w, h.v()));
        bool sound = value > emp;
        if (cert.kind == Certificate::Kind::Monomial) sound = sound && cert.log_sup >= emp - 1e-9 * std::max(1.0, std::abs(emp));
        if (!sound) {
            rep.failures.push_back({"c", z, "certificate " + cert.polynomial() + " does not separate", emp - value});
        }
    }

    // (d) convex combinations of X plus recession directions are never Outside
    std::exponential_distribution<double> expo(1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto& qv = h.q_vertices();
    for (std::size_t m = 0; m < opt.n_monomials && !qv.empty(); ++m) {
        std::vector<double> x(n, 0.0);
        double total = 0.0;
        std::vector<double> w(qv.size());
        for (auto& e : w) {
            e = expo(rng);
            total += e;
        }
        for (std::size_t j = 0; j < qv.size(); ++j) {
            for (std::size_t k = 0; k < n; ++k) x[k] += w[j] / total * h.points()[qv[j]][k];
        }
        for (const auto& r : h.recession().rays) {
            double c = 2.0 * unit(rng);
            for (std::size_t k = 0; k < n; ++k) x[k] += c * r[k].convert_to<double>();
        }
        std::vector<double> eta(n, 0.0);
        for (const auto& b : t.basis()) {
            double u = unit(rng);
            for (std::size_t k = 0; k < n; ++k) eta[k] += 2.0 * std::numbers::pi * u * b[k].convert_to<double>();
        }
        CVector z(n);
        for (std::size_t k = 0; k < n; ++k) z[k] = std::exp(std::complex<double>(x[k], eta[k])) * h.v()[k];
        MembershipVerdict mv = membership(h, z, opt.tol);
        ++rep.checks_run;
        if (std::isfinite(mv.max_violation)) note(mv.max_violation);
        if (mv.status == Status::Outside) {
            rep.failures.push_back({"d", z, "point of exp(P_X) v reported outside (" + mv.reason + ")",
                                    mv.max_violation});
        }
    }
    return rep;
}

}  // namespace orbithull
