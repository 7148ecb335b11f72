#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sirmeta/common.hpp"
#include "sirmeta/process.hpp"

namespace sirmeta {

// MISR of the Poisson network, E[ISR] = 2 / (alpha - 2).
inline double misr_ppp(double alpha) {
    if (!(alpha > 2.0)) throw std::invalid_argument("misr_ppp: alpha must be > 2");
    return 2.0 / (alpha - 2.0);
}

struct GainEstimate {
    double value_linear = 1.0;
    double value_db = 0.0;
    double std_error_db = 0.0;
    std::uint64_t n = 0;
    std::uint64_t resampled = 0;
};

// Asymptotic (MISR-based) gain G_0 = MISR_PPP / MISR of the given process,
// estimated from n realizations; the standard error follows by the delta
// method from the ISR sample variance.  The per-realization ISR sums every
// sampled interferer, i.e. interference is truncated at the simulation
// window, the convention the reference gains are quoted under.  For alpha
// well above 2 the omitted tail is negligible for any reasonable window; as
// alpha approaches 2 the tail decays like L^(2-alpha) and the reported gain
// becomes a property of the window size as much as of the process, so
// comparisons must fix the window.  `density` must be supplied for the
// Poisson kind (whose density is a free parameter); other kinds use their
// intrinsic density and reject a contradictory override.
GainEstimate estimate_g0(const ProcessKind& kind, double alpha, const Window& window,
                         std::uint64_t n, std::uint64_t seed,
                         std::optional<double> density = std::nullopt);

// Empirical moment-matching gain G_b(theta): the horizontal dB shift mapping
// M_b of the PPP onto the simulated M_b of the process.  One simulation over
// the theta list extended by +-8 dB (0.25 dB spacing) serves every requested
// theta; the simulated moment curve is monotonized, interpolated by a
// monotone cubic (PCHIP), and the matching equation is solved by bisection to
// 1e-3 dB.  Throws when the target moment falls outside what the extended
// grid reaches.
std::vector<GainEstimate> gb_curve(const ProcessKind& kind, double alpha, const Window& window,
                                   const std::vector<double>& theta_db_list, double b,
                                   std::uint64_t n, std::uint64_t seed,
                                   std::optional<double> density = std::nullopt);

GainEstimate estimate_gb(double theta_db, double b, const ProcessKind& kind, double alpha,
                         const Window& window, std::uint64_t n, std::uint64_t seed,
                         std::optional<double> density = std::nullopt);

// Per-tier gains condensed into the single effective gain
//   G_eff = 1 + sum_k w_k^2 (G_k - 1),  w_k = lambda_k P_k^delta / sum_i ...,
// exact given the inputs (zero standard error).  Requires one shared path-loss
// exponent and a gain on every tier.
GainEstimate effective_gain(const std::vector<TierSpec>& tiers);

} // namespace sirmeta
