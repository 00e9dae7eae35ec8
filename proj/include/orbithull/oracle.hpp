/**
 * Brute-force cross-checks of a hull description against samples of the orbit.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "orbithull/hull.hpp"

namespace orbithull {

/**
 * N points g exp(i eta) v, g uniform over f, eta uniform over a fundamental
 * cell of 2 pi Gamma.  Points are drawn in chunks of 1024 with per-chunk RNG
 * streams, so the output does not depend on ORBITHULL_THREADS.
 */
std::vector<CVector> sample_orbit(const TorusLattice& t, const MonomialGroup& f, const CVector& v, std::size_t n_points,
                                  std::uint64_t seed);

/// max over points of prod |z_k|^{s_k}
double empirical_sup(const std::vector<CVector>& points, const std::vector<long long>& s);
double empirical_log_sup(const std::vector<CVector>& points, const std::vector<long long>& s);

struct VerificationFailure {
    std::string check;  // a, b, c or d
    CVector witness;
    std::string inequality;
    double violation = 0.0;
};

struct VerificationReport {
    std::size_t checks_run = 0;
    std::vector<VerificationFailure> failures;
    double max_violation = -std::numeric_limits<double>::infinity();
    std::uint64_t seed = 0;
    double tolerance = 0.0;

    bool ok() const { return failures.empty(); }
};

struct VerifyOptions {
    std::size_t n_points = 10000;
    std::size_t n_monomials = 50;
    std::uint64_t seed = 42;
    double tol = 1e-9;
    double sampling_slack = 0.05;
};

VerificationReport verify_hull(const OrbitHull& h, const VerifyOptions& opt = {});

/// Threads used by the oracle: ORBITHULL_THREADS if set, else the hardware count.
unsigned oracle_threads();

}  // namespace orbithull
