#pragma once

#include <cstddef>
#include <vector>

#include "sirmeta/common.hpp"
#include "sirmeta/process.hpp"
#include "sirmeta/sampling.hpp"

namespace sirmeta {

// One sampled multi-tier network; points_per_tier[k] belongs to tiers[k].
struct NetworkRealization {
    Window window;
    std::vector<TierSpec> tiers;
    std::vector<PointSet> points_per_tier;

    std::size_t total_points() const {
        std::size_t n = 0;
        for (const auto& ps : points_per_tier) n += ps.points.size();
        return n;
    }
};

// Serving point of the typical user at the origin: strongest mean received
// power P_k r^{-alpha_k}, fading averaged out.  Ties break toward the lower
// tier index, then the lower point index.
struct Association {
    int tier = 0;
    std::size_t point_index = 0;
    Vec2 position{};
    double mean_power = 0.0;
};

// Throws std::runtime_error when the realization contains no points.
Association associate(const NetworkRealization& net);

// Mean received power at the origin from distance^2 r2 under exponent alpha.
double powered_value(double power, double r2, double alpha);

// Conditional success probability P_s(theta) given the realization, with
// Rayleigh fading integrated out analytically:
//   P_s = prod over non-serving points of 1 / (1 + theta * u_i),
// where u_i is the interferer's mean power relative to the serving one.
// Direct product over every point; this is the reference implementation the
// fast profile path is validated against.
double conditional_success_probability(const NetworkRealization& net, const Association& assoc,
                                       double theta);

// Interference-to-average-signal ratio ISR = sum_i u_i for the realization.
double isr_sample(const NetworkRealization& net, const Association& assoc);

// Per-realization summary supporting fast evaluation of P_s over a whole
// theta grid.  Interferers with theta_max * u_i above a fixed cut keep their
// exact relative power; the rest enter through power sums S1..S4, giving
//   log P_s(theta) = -sum_strong log1p(theta u)
//                    - (theta S1 - theta^2 S2/2 + theta^3 S3/3 - theta^4 S4/4)
// with relative error below ~1e-12 for any theta <= theta_max.
class InterferenceProfile {
  public:
    InterferenceProfile(const NetworkRealization& net, const Association& assoc, double theta_max);

    double log_ps(double theta) const; // theta must be <= theta_max
    double ps(double theta) const;
    double isr() const { return isr_; }
    double theta_max() const { return theta_max_; }
    bool finite() const { return finite_; } // false for degenerate (r = 0) geometry

  private:
    std::vector<double> strong_;
    double s1_ = 0.0, s2_ = 0.0, s3_ = 0.0, s4_ = 0.0;
    double isr_ = 0.0;
    double theta_max_ = 0.0;
    bool finite_ = true;
};

} // namespace sirmeta
