#include "sirmeta/sir.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sirmeta {

double powered_value(double power, double r2, double alpha) {
    if (r2 == 0.0) return std::numeric_limits<double>::infinity();
    if (alpha == 4.0) return power / (r2 * r2);
    if (alpha == 2.0) return power / r2;
    return power * std::pow(r2, -0.5 * alpha);
}

Association associate(const NetworkRealization& net) {
    Association best;
    bool found = false;
    for (std::size_t k = 0; k < net.points_per_tier.size(); ++k) {
        const auto& tier = net.tiers[k];
        const auto& pts = net.points_per_tier[k].points;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double pv = powered_value(tier.power, norm2(pts[i]), tier.alpha);
            if (!found || pv > best.mean_power) {
                best = {static_cast<int>(k), i, pts[i], pv};
                found = true;
            }
        }
    }
    if (!found) throw std::runtime_error("associate: realization has no points");
    return best;
}

namespace {

// Calls f(u) for the relative mean power u of every non-serving point.
template <typename F>
void for_each_interferer(const NetworkRealization& net, const Association& assoc, F&& f) {
    const double inv_serv = 1.0 / assoc.mean_power;
    for (std::size_t k = 0; k < net.points_per_tier.size(); ++k) {
        const auto& tier = net.tiers[k];
        const auto& pts = net.points_per_tier[k].points;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (static_cast<int>(k) == assoc.tier && i == assoc.point_index) continue;
            f(powered_value(tier.power, norm2(pts[i]), tier.alpha) * inv_serv);
        }
    }
}

} // namespace

double conditional_success_probability(const NetworkRealization& net, const Association& assoc,
                                       double theta) {
    if (!(theta >= 0.0)) throw std::invalid_argument("conditional_success_probability: theta < 0");
    double log_ps = 0.0;
    for_each_interferer(net, assoc, [&](double u) { log_ps -= std::log1p(theta * u); });
    return std::exp(log_ps);
}

double isr_sample(const NetworkRealization& net, const Association& assoc) {
    double isr = 0.0;
    for_each_interferer(net, assoc, [&](double u) { isr += u; });
    return isr;
}

InterferenceProfile::InterferenceProfile(const NetworkRealization& net, const Association& assoc,
                                         double theta_max)
    : theta_max_(theta_max) {
    if (!(theta_max > 0.0)) throw std::invalid_argument("InterferenceProfile: theta_max must be > 0");
    const double u_cut = 1e-3 / theta_max;
    for_each_interferer(net, assoc, [&](double u) {
        if (!std::isfinite(u)) {
            finite_ = false;
            return;
        }
        if (u > u_cut) {
            strong_.push_back(u);
        } else {
            const double u2 = u * u;
            s1_ += u;
            s2_ += u2;
            s3_ += u2 * u;
            s4_ += u2 * u2;
        }
    });
    isr_ = s1_;
    for (double u : strong_) isr_ += u;
    if (!std::isfinite(assoc.mean_power) || !std::isfinite(isr_)) finite_ = false;
}

double InterferenceProfile::log_ps(double theta) const {
    if (theta > theta_max_ * (1.0 + 1e-12))
        throw std::logic_error("InterferenceProfile: theta beyond the theta_max it was built for");
    double lp = 0.0;
    for (double u : strong_) lp -= std::log1p(theta * u);
    const double t2 = theta * theta;
    lp -= theta * s1_ - 0.5 * t2 * s2_ + (1.0 / 3.0) * t2 * theta * s3_ - 0.25 * t2 * t2 * s4_;
    return lp;
}

double InterferenceProfile::ps(double theta) const { return std::exp(log_ps(theta)); }

} // namespace sirmeta
