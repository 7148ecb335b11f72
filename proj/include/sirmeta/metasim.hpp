#pragma once

#include <cstdint>
#include <vector>

#include "sirmeta/meta_curve.hpp"
#include "sirmeta/process.hpp"
#include "sirmeta/sir.hpp"

namespace sirmeta {

// Monte Carlo estimate of the meta distribution: per-theta samples of the
// conditional success probability (stored as float log P_s) plus the
// per-realization ISR, over n realizations drawn from the master seed.
struct EmpiricalMeta {
    std::vector<double> theta_db;
    std::vector<double> x;
    std::vector<std::vector<float>> log_ps; // log_ps[i][r], theta index i
    std::vector<float> isr;                 // isr[r]
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    std::uint64_t resampled = 0;

    // P(P_s > x_j) at theta_db[i] (strict inequality) with binomial stderr.
    double ccdf(std::size_t theta_idx, double x_value) const;
    MetaCurve ccdf_curve() const;

    // Empirical moment M_b(theta_db[i]) over the stored samples.
    double moment(std::size_t theta_idx, double b) const;
    double moment_stderr(std::size_t theta_idx, double b) const;

    double misr() const;
    double misr_stderr() const;
};

// OpenMP-parallel simulation.  Realization r always uses RNG stream
// (seed, r, attempt), and per-realization results land in slot r before a
// serial reduction, so the output is bit-identical for any thread count
// (including the serial reference below).  Realizations with no points or a
// degenerate zero-distance geometry are resampled with the attempt counter
// bumped, and counted in `resampled`.
EmpiricalMeta simulate_meta(const std::vector<TierSpec>& tiers, const Window& window,
                            const std::vector<double>& theta_db, const std::vector<double>& x,
                            std::uint64_t n, std::uint64_t seed);

// Serial reference: identical sampling, but P_s evaluated by the direct
// product over every interferer for every theta, bypassing the
// InterferenceProfile fast path.  Used by tests and the benchmark.
EmpiricalMeta simulate_meta_reference(const std::vector<TierSpec>& tiers, const Window& window,
                                      const std::vector<double>& theta_db,
                                      const std::vector<double>& x, std::uint64_t n,
                                      std::uint64_t seed);

// Deterministic worst case of the triangular lattice: the user sits on a
// Voronoi vertex, equidistant (d = eta/sqrt(3)) from its three nearest sites,
// served by one of them.  P_s is the truncated product over all other sites
// within trunc_radius; radius 0 requests the automatic choice making the
// omitted tail change log P_s by less than 1e-8 (an explicitly passed radius
// is validated against the same bound).
double worst_case_ps(const TriangularLattice& lattice, double alpha, double theta,
                     double trunc_radius = 0.0);

struct CriticalThreshold {
    double x = 0.0;
    double theta_c_db = 0.0;
    TriangularLattice lattice;
    double alpha = 4.0;
};

// Smallest theta at which the worst-case P_s drops to x: below the returned
// threshold every user in the lattice network meets reliability x, so the
// simulated 1 - F(theta, x) collapses to exactly zero there.  Bisection to
// 1e-3 dB.
CriticalThreshold critical_theta(const TriangularLattice& lattice, double alpha, double x);

} // namespace sirmeta
