#include "sirmeta/gains.hpp"

#include <cmath>
// boost 1.7x pchip.hpp calls isnan unqualified; make the std one reachable.
using std::isnan;

#include <boost/math/interpolators/pchip.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sirmeta/hyp2f1.hpp"
#include "sirmeta/metasim.hpp"
#include "sirmeta/moments.hpp"
#include "sirmeta/rng.hpp"
#include "sirmeta/sampling.hpp"
#include "sirmeta/sir.hpp"

namespace sirmeta {

namespace {

constexpr double kDbPerNep = 10.0 / M_LN10;

double resolve_density(const ProcessKind& kind, const std::optional<double>& density) {
    const auto intrinsic = intrinsic_density(kind);
    if (intrinsic) {
        if (density && std::abs(*density - *intrinsic) > 1e-9 * *intrinsic)
            throw std::invalid_argument("density override contradicts the process parameters");
        return *intrinsic;
    }
    if (!density)
        throw std::invalid_argument("estimate_g0/gb: the Poisson kind needs an explicit density");
    return *density;
}

} // namespace

GainEstimate estimate_g0(const ProcessKind& kind, double alpha, const Window& window,
                         std::uint64_t n, std::uint64_t seed, std::optional<double> density) {
    const double lambda = resolve_density(kind, density);
    const TierSpec tier = make_tier(kind, lambda, 1.0, alpha);
    validate_tier(tier);
    if (n == 0) throw std::invalid_argument("estimate_g0: n must be > 0");

    constexpr int kMaxAttempts = 256;

    std::vector<double> isr(n, 0.0);
    const long long nn = static_cast<long long>(n);
    std::vector<int> attempts(n, 0);
    std::atomic<bool> failed{false};
    std::string failure;

#pragma omp parallel for schedule(dynamic, 16)
    for (long long r = 0; r < nn; ++r) {
        if (failed.load(std::memory_order_relaxed)) continue;
        try {
            NetworkRealization net{window, {tier}, {}};
            Association assoc;
            int attempt = 0;
            for (;; ++attempt) {
                if (attempt >= kMaxAttempts)
                    throw std::runtime_error(
                        "estimate_g0: realization unusable after 256 attempts (window likely far "
                        "too small for the density)");
                auto rng = make_stream(seed, static_cast<std::uint64_t>(r),
                                       static_cast<std::uint64_t>(attempt));
                net.points_per_tier.assign(
                    1, sample_process(kind, lambda, window, rng));
                if (net.total_points() == 0) continue;
                assoc = associate(net);
                if (std::isfinite(assoc.mean_power)) break;
            }
            attempts[r] = attempt;
            const auto& pts = net.points_per_tier[0].points;
            double sum = 0.0;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                if (i == assoc.point_index) continue;
                sum += powered_value(1.0, norm2(pts[i]), alpha) / assoc.mean_power;
            }
            isr[r] = sum;
        } catch (const std::exception& e) {
#pragma omp critical
            {
                failure = e.what();
                failed.store(true);
            }
        }
    }
    if (failed) throw std::runtime_error(failure);

    double misr = 0.0;
    for (double v : isr) misr += v;
    misr /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : isr) ss += (v - misr) * (v - misr);
    const double se =
        n > 1 ? std::sqrt(ss / (static_cast<double>(n) * static_cast<double>(n - 1))) : 0.0;

    const double g0 = misr_ppp(alpha) / misr;
    GainEstimate est;
    est.value_linear = g0;
    est.value_db = linear_to_db(g0);
    est.std_error_db = kDbPerNep * se / misr;
    est.n = n;
    est.resampled = std::accumulate(attempts.begin(), attempts.end(), std::uint64_t{0});
    return est;
}

std::vector<GainEstimate> gb_curve(const ProcessKind& kind, double alpha, const Window& window,
                                   const std::vector<double>& theta_db_list, double b,
                                   std::uint64_t n, std::uint64_t seed,
                                   std::optional<double> density) {
    if (theta_db_list.empty()) return {};
    if (!(b != 0.0)) throw std::invalid_argument("gb_curve: b must be nonzero");
    const double lambda = resolve_density(kind, density);
    const TierSpec tier = make_tier(kind, lambda, 1.0, alpha);
    const double delta = tier.delta();

    const double step = 0.25;
    const double lo = *std::min_element(theta_db_list.begin(), theta_db_list.end()) - 8.0;
    const double hi = *std::max_element(theta_db_list.begin(), theta_db_list.end()) + 8.0;
    std::vector<double> grid_db;
    for (double t = lo; t <= hi + 1e-9; t += step) grid_db.push_back(t);

    const EmpiricalMeta em = simulate_meta({tier}, window, grid_db, {}, n, seed);
    std::vector<double> m(grid_db.size()), se(grid_db.size());
    for (std::size_t j = 0; j < grid_db.size(); ++j) {
        m[j] = em.moment(j, b);
        se[j] = em.moment_stderr(j, b);
    }
    // Noise can break the exact monotonicity in theta; restore it before
    // interpolating (running minimum for b > 0, running maximum for b < 0).
    for (std::size_t j = 1; j < m.size(); ++j)
        m[j] = b > 0.0 ? std::min(m[j], m[j - 1]) : std::max(m[j], m[j - 1]);

    // PCHIP needs strictly ordered data; nudge flat stretches apart by a
    // relative epsilon too small to matter numerically.
    std::vector<double> m_interp = m;
    for (std::size_t j = 1; j < m_interp.size(); ++j) {
        const double dir = b > 0.0 ? -1.0 : 1.0;
        const double least = m_interp[j - 1] * (1.0 + dir * 1e-12);
        if (b > 0.0 && m_interp[j] >= least) m_interp[j] = least;
        if (b < 0.0 && m_interp[j] <= least) m_interp[j] = least;
    }
    auto x_interp = grid_db;
    boost::math::interpolators::pchip<std::vector<double>> curve(std::move(x_interp),
                                                                 std::move(m_interp));

    std::vector<GainEstimate> out;
    out.reserve(theta_db_list.size());
    for (double theta_db : theta_db_list) {
        const double target = mb_ppp(b, delta, db_to_linear(theta_db));
        const bool decreasing = b > 0.0;
        const double first = m.front(), last = m.back();
        const bool reachable = decreasing ? (target <= first && target >= last)
                                          : (target >= first && target <= last);
        if (!reachable) {
            std::ostringstream msg;
            msg << "gb_curve: target moment " << target << " for theta = " << theta_db
                << " dB outside the simulated range [" << std::min(first, last) << ", "
                << std::max(first, last) << "] reached on [" << grid_db.front() << ", "
                << grid_db.back() << "] dB; widen the grid or change theta";
            throw std::runtime_error(msg.str());
        }
        double a = grid_db.front(), c = grid_db.back();
        while (c - a > 1e-3) {
            const double mid = 0.5 * (a + c);
            const bool above = curve(mid) > target;
            if (above == decreasing)
                a = mid;
            else
                c = mid;
        }
        const double root = 0.5 * (a + c);
        GainEstimate est;
        est.value_db = root - theta_db;
        est.value_linear = db_to_linear(est.value_db);
        const double slope = std::abs(curve.prime(root)); // dM/d(theta_db)
        const std::size_t j_near = static_cast<std::size_t>(
            std::clamp((root - grid_db.front()) / step, 0.0,
                       static_cast<double>(grid_db.size() - 1)));
        est.std_error_db = slope > 0.0 ? se[j_near] / slope : HUGE_VAL;
        est.n = n;
        est.resampled = em.resampled;
        out.push_back(est);
    }
    return out;
}

GainEstimate estimate_gb(double theta_db, double b, const ProcessKind& kind, double alpha,
                         const Window& window, std::uint64_t n, std::uint64_t seed,
                         std::optional<double> density) {
    return gb_curve(kind, alpha, window, {theta_db}, b, n, seed, density).front();
}

GainEstimate effective_gain(const std::vector<TierSpec>& tiers) {
    validate_tiers(tiers);
    const double alpha = tiers.front().alpha;
    double wsum = 0.0;
    for (std::size_t k = 0; k < tiers.size(); ++k) {
        if (tiers[k].alpha != alpha)
            throw std::invalid_argument(
                "effective_gain: defined only when all tiers share one alpha");
        if (!tiers[k].gain) {
            std::ostringstream msg;
            msg << "effective_gain: tier " << k << " has no gain";
            throw std::invalid_argument(msg.str());
        }
        wsum += tiers[k].density * std::pow(tiers[k].power, tiers[k].delta());
    }
    double g = 1.0;
    for (const auto& t : tiers) {
        const double w = t.density * std::pow(t.power, t.delta()) / wsum;
        g += w * w * (*t.gain - 1.0);
    }
    GainEstimate est;
    est.value_linear = g;
    est.value_db = linear_to_db(g);
    est.std_error_db = 0.0;
    est.n = 0;
    est.resampled = 0;
    return est;
}

} // namespace sirmeta
