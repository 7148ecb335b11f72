#include "sirmeta/metasim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sirmeta/common.hpp"
#include "sirmeta/rng.hpp"
#include "sirmeta/sampling.hpp"

namespace sirmeta {

namespace {

constexpr int kMaxAttempts = 256;

struct DrawnRealization {
    NetworkRealization net;
    Association assoc;
    int attempts_used = 0; // extra attempts beyond the first
};

// Samples tiers with stream (seed, index, attempt) until the realization is
// usable: non-empty and with finite association power and ISR.
DrawnRealization draw_realization(const std::vector<TierSpec>& tiers, const Window& window,
                                  std::uint64_t seed, std::uint64_t index) {
    DrawnRealization out{{window, tiers, {}}, {}, 0};
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        auto rng = make_stream(seed, index, static_cast<std::uint64_t>(attempt));
        out.net.points_per_tier.clear();
        for (std::size_t k = 0; k < tiers.size(); ++k) {
            PointSet ps = sample_process(tiers[k].kind, tiers[k].density, window, rng);
            ps.tier = static_cast<int>(k);
            out.net.points_per_tier.push_back(std::move(ps));
        }
        out.attempts_used = attempt;
        if (out.net.total_points() == 0) continue;
        out.assoc = associate(out.net);
        if (!std::isfinite(out.assoc.mean_power)) continue;
        return out;
    }
    std::ostringstream msg;
    msg << "simulate_meta: realization " << index << " unusable after " << kMaxAttempts
        << " attempts (window likely far too small for the density)";
    throw std::runtime_error(msg.str());
}

std::vector<double> to_linear(const std::vector<double>& theta_db) {
    std::vector<double> v(theta_db.size());
    for (std::size_t i = 0; i < theta_db.size(); ++i) v[i] = db_to_linear(theta_db[i]);
    return v;
}

EmpiricalMeta make_result(const std::vector<double>& theta_db, const std::vector<double>& x,
                          std::uint64_t n, std::uint64_t seed) {
    EmpiricalMeta em;
    em.theta_db = theta_db;
    em.x = x;
    em.n = n;
    em.seed = seed;
    em.log_ps.assign(theta_db.size(), std::vector<float>(n, 0.0f));
    em.isr.assign(n, 0.0f);
    return em;
}

} // namespace

EmpiricalMeta simulate_meta(const std::vector<TierSpec>& tiers, const Window& window,
                            const std::vector<double>& theta_db, const std::vector<double>& x,
                            std::uint64_t n, std::uint64_t seed) {
    validate_tiers(tiers);
    if (n == 0) throw std::invalid_argument("simulate_meta: n must be > 0");
    EmpiricalMeta em = make_result(theta_db, x, n, seed);
    const std::vector<double> theta = to_linear(theta_db);
    const double theta_max =
        theta.empty() ? 1.0 : *std::max_element(theta.begin(), theta.end());
    std::vector<int> attempts(n, 0);
    const long long nn = static_cast<long long>(n);

    std::atomic<bool> failed{false};
    std::string failure;

#pragma omp parallel
    {
#pragma omp for schedule(dynamic, 16)
        for (long long r = 0; r < nn; ++r) {
            if (failed.load(std::memory_order_relaxed)) continue;
            try {
                const auto drawn =
                    draw_realization(tiers, window, seed, static_cast<std::uint64_t>(r));
                InterferenceProfile prof(drawn.net, drawn.assoc, theta_max);
                int extra = drawn.attempts_used;
                // A non-finite ISR shows up only at profile build time; retry
                // the remaining attempts from there.
                while (!prof.finite()) {
                    ++extra;
                    if (extra >= kMaxAttempts)
                        throw std::runtime_error("simulate_meta: degenerate realization persists");
                    auto rng = make_stream(seed, static_cast<std::uint64_t>(r),
                                           static_cast<std::uint64_t>(extra));
                    NetworkRealization net{window, tiers, {}};
                    for (std::size_t k = 0; k < tiers.size(); ++k) {
                        PointSet ps = sample_process(tiers[k].kind, tiers[k].density, window, rng);
                        ps.tier = static_cast<int>(k);
                        net.points_per_tier.push_back(std::move(ps));
                    }
                    if (net.total_points() == 0) continue;
                    const Association assoc = associate(net);
                    if (!std::isfinite(assoc.mean_power)) continue;
                    prof = InterferenceProfile(net, assoc, theta_max);
                }
                attempts[r] = extra;
                em.isr[r] = static_cast<float>(prof.isr());
                for (std::size_t i = 0; i < theta.size(); ++i)
                    em.log_ps[i][r] = static_cast<float>(prof.log_ps(theta[i]));
            } catch (const std::exception& e) {
#pragma omp critical
                {
                    failure = e.what();
                    failed.store(true);
                }
            }
        }
    }
    if (failed) throw std::runtime_error(failure);
    em.resampled = std::accumulate(attempts.begin(), attempts.end(), std::uint64_t{0});
    return em;
}

EmpiricalMeta simulate_meta_reference(const std::vector<TierSpec>& tiers, const Window& window,
                                      const std::vector<double>& theta_db,
                                      const std::vector<double>& x, std::uint64_t n,
                                      std::uint64_t seed) {
    validate_tiers(tiers);
    if (n == 0) throw std::invalid_argument("simulate_meta_reference: n must be > 0");
    EmpiricalMeta em = make_result(theta_db, x, n, seed);
    const std::vector<double> theta = to_linear(theta_db);
    std::uint64_t resampled = 0;
    for (std::uint64_t r = 0; r < n; ++r) {
        // Reference resampling criterion must match the fast path: retry while
        // empty, non-finite association power, or non-finite ISR.
        NetworkRealization net{window, tiers, {}};
        Association assoc;
        double isr = 0.0;
        int attempt = 0;
        for (;; ++attempt) {
            if (attempt >= kMaxAttempts)
                throw std::runtime_error("simulate_meta_reference: degenerate realization persists");
            auto rng = make_stream(seed, r, static_cast<std::uint64_t>(attempt));
            net.points_per_tier.clear();
            for (std::size_t k = 0; k < tiers.size(); ++k) {
                PointSet ps = sample_process(tiers[k].kind, tiers[k].density, window, rng);
                ps.tier = static_cast<int>(k);
                net.points_per_tier.push_back(std::move(ps));
            }
            if (net.total_points() == 0) continue;
            assoc = associate(net);
            if (!std::isfinite(assoc.mean_power)) continue;
            isr = isr_sample(net, assoc);
            if (!std::isfinite(isr)) continue;
            break;
        }
        resampled += static_cast<std::uint64_t>(attempt);
        em.isr[r] = static_cast<float>(isr);
        for (std::size_t i = 0; i < theta.size(); ++i)
            em.log_ps[i][r] = static_cast<float>(
                std::log(conditional_success_probability(net, assoc, theta[i])));
    }
    em.resampled = resampled;
    return em;
}

double EmpiricalMeta::ccdf(std::size_t theta_idx, double x_value) const {
    if (theta_idx >= log_ps.size()) throw std::out_of_range("EmpiricalMeta::ccdf: theta index");
    if (x_value <= 0.0) return 1.0;
    if (x_value >= 1.0) return 0.0;
    const float log_x = static_cast<float>(std::log(x_value));
    std::uint64_t count = 0;
    for (float lp : log_ps[theta_idx])
        if (lp > log_x) ++count;
    return static_cast<double>(count) / static_cast<double>(n);
}

MetaCurve EmpiricalMeta::ccdf_curve() const {
    MetaCurve c;
    c.theta_db = theta_db;
    c.x = x;
    c.provenance = MetaCurve::Provenance::empirical;
    c.fbar.assign(theta_db.size(), std::vector<double>(x.size(), 0.0));
    c.stderr_.assign(theta_db.size(), std::vector<double>(x.size(), 0.0));
    for (std::size_t i = 0; i < theta_db.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double p = ccdf(i, x[j]);
            c.fbar[i][j] = p;
            c.stderr_[i][j] = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
        }
    }
    return c;
}

double EmpiricalMeta::moment(std::size_t theta_idx, double b) const {
    if (theta_idx >= log_ps.size()) throw std::out_of_range("EmpiricalMeta::moment: theta index");
    double sum = 0.0;
    for (float lp : log_ps[theta_idx]) sum += std::exp(b * static_cast<double>(lp));
    return sum / static_cast<double>(n);
}

double EmpiricalMeta::moment_stderr(std::size_t theta_idx, double b) const {
    const double m = moment(theta_idx, b);
    double ss = 0.0;
    for (float lp : log_ps[theta_idx]) {
        const double d = std::exp(b * static_cast<double>(lp)) - m;
        ss += d * d;
    }
    return std::sqrt(ss / (static_cast<double>(n) * static_cast<double>(n - 1)));
}

double EmpiricalMeta::misr() const {
    double sum = 0.0;
    for (float v : isr) sum += static_cast<double>(v);
    return sum / static_cast<double>(n);
}

double EmpiricalMeta::misr_stderr() const {
    const double m = misr();
    double ss = 0.0;
    for (float v : isr) {
        const double d = static_cast<double>(v) - m;
        ss += d * d;
    }
    return std::sqrt(ss / (static_cast<double>(n) * static_cast<double>(n - 1)));
}

namespace {

// Streams the squared distances of all lattice sites around the worst-case
// user, serving site excluded.  The user sits at the circumcenter
// c = eta (1/2, sqrt(3)/6) of a lattice triangle; sites are G v - c.
// Streaming keeps the memory flat even when the truncation radius spans
// tens of millions of sites.
template <typename F>
void for_each_worst_case_site(const TriangularLattice& lattice, double radius, F&& f) {
    const double eta = lattice.eta;
    const double cx = eta * 0.5;
    const double cy = eta * std::sqrt(3.0) / 6.0;
    const double row_h = eta * std::sqrt(3.0) / 2.0;
    const double serving_r2 = eta * eta / 3.0;
    const long v2_hi = static_cast<long>(std::floor((radius + cy) / row_h)) + 1;
    bool serving_excluded = false;
    for (long v2 = -v2_hi; v2 <= v2_hi; ++v2) {
        const double y = row_h * static_cast<double>(v2) - cy;
        const double x0 = eta * (0.5 * static_cast<double>(v2)) - cx;
        const long v1_span = static_cast<long>(std::floor(radius / eta)) + 2;
        const long v1_mid = static_cast<long>(std::llround(-x0 / eta));
        for (long v1 = v1_mid - v1_span; v1 <= v1_mid + v1_span; ++v1) {
            const double x = eta * static_cast<double>(v1) + x0;
            const double d2 = x * x + y * y;
            if (d2 > radius * radius) continue;
            if (!serving_excluded && std::abs(d2 - serving_r2) < 1e-9 * serving_r2) {
                serving_excluded = true; // one of the three nearest serves
                continue;
            }
            f(d2);
        }
    }
    if (!serving_excluded)
        throw std::logic_error("worst_case_ps: serving site not found (radius too small?)");
}

double tail_radius(const TriangularLattice& lattice, double alpha, double theta) {
    // Bound: sum over sites beyond R of theta (d/r)^alpha is below
    // theta d^alpha lambda 2 pi R^(2-alpha) / (alpha - 2); solve for 1e-8.
    const double lambda = 2.0 / (std::sqrt(3.0) * lattice.eta * lattice.eta);
    const double d2 = lattice.eta * lattice.eta / 3.0;
    const double dalpha = std::pow(d2, 0.5 * alpha);
    const double coeff = theta * dalpha * lambda * 2.0 * pi / (alpha - 2.0);
    const double r = std::pow(coeff / 1e-8, 1.0 / (alpha - 2.0));
    return std::max(r, 4.0 * lattice.eta);
}

// Relative interferer powers for the worst-case user within `radius`, stored
// for reuse across bisection iterations.
std::vector<double> worst_case_weights(const TriangularLattice& lattice, double alpha,
                                       double radius) {
    const double serving_r2 = lattice.eta * lattice.eta / 3.0;
    const double pv_serv = powered_value(1.0, serving_r2, alpha);
    std::vector<double> w;
    w.reserve(static_cast<std::size_t>(2.0 / (std::sqrt(3.0) * lattice.eta * lattice.eta) * pi *
                                       radius * radius * 1.05) +
              16);
    for_each_worst_case_site(lattice, radius, [&](double d2) {
        w.push_back(powered_value(1.0, d2, alpha) / pv_serv);
    });
    return w;
}

double worst_case_log_ps(const std::vector<double>& weights, double theta) {
    double lp = 0.0;
    for (double w : weights) lp -= std::log1p(theta * w);
    return lp;
}

} // namespace

double worst_case_ps(const TriangularLattice& lattice, double alpha, double theta,
                     double trunc_radius) {
    validate_kind(ProcessKind{lattice});
    if (!(alpha > 2.0)) throw std::invalid_argument("worst_case_ps: alpha must be > 2");
    if (!(theta >= 0.0)) throw std::invalid_argument("worst_case_ps: theta must be >= 0");
    if (theta == 0.0) return 1.0;
    const double needed = tail_radius(lattice, alpha, theta);
    if (trunc_radius == 0.0) {
        trunc_radius = needed;
    } else if (trunc_radius < needed) {
        std::ostringstream msg;
        msg << "worst_case_ps: truncation radius " << trunc_radius
            << " leaves a tail above 1e-8 in log P_s; need at least " << needed;
        throw std::invalid_argument(msg.str());
    }
    // One-shot evaluation: stream the sites instead of materializing the
    // weight vector.
    const double serving_r2 = lattice.eta * lattice.eta / 3.0;
    const double pv_serv = powered_value(1.0, serving_r2, alpha);
    double lp = 0.0;
    for_each_worst_case_site(lattice, trunc_radius, [&](double d2) {
        lp -= std::log1p(theta * powered_value(1.0, d2, alpha) / pv_serv);
    });
    return std::exp(lp);
}

CriticalThreshold critical_theta(const TriangularLattice& lattice, double alpha, double x) {
    validate_kind(ProcessKind{lattice});
    if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument("critical_theta: x must be in (0, 1)");
    if (!(alpha > 2.0)) throw std::invalid_argument("critical_theta: alpha must be > 2");
    const double target = std::log(x);

    // Stage 1: locate the root to ~0.1 dB on a modest enumeration (the
    // truncation bias there is far below what 0.1 dB of slack absorbs).
    {
        const auto w = worst_case_weights(lattice, alpha, 150.0 * lattice.eta);
        double lo_db = -200.0, hi_db = 60.0;
        if (worst_case_log_ps(w, db_to_linear(lo_db)) <= target)
            throw std::runtime_error("critical_theta: x unreachable at theta = -200 dB");
        if (worst_case_log_ps(w, db_to_linear(hi_db)) > target)
            throw std::runtime_error("critical_theta: worst-case P_s stays above x at +60 dB");
        while (hi_db - lo_db > 0.1) {
            const double mid = 0.5 * (lo_db + hi_db);
            (worst_case_log_ps(w, db_to_linear(mid)) > target ? lo_db : hi_db) = mid;
        }
        // Stage 2: redo the bisection on the full-accuracy enumeration sized
        // for the upper end of the refined bracket.
        const double brack_lo = lo_db - 0.5, brack_hi = hi_db + 0.5;
        const auto wf = worst_case_weights(
            lattice, alpha, tail_radius(lattice, alpha, db_to_linear(brack_hi)));
        double lo = brack_lo, hi = brack_hi;
        if (worst_case_log_ps(wf, db_to_linear(lo)) <= target ||
            worst_case_log_ps(wf, db_to_linear(hi)) > target)
            throw std::runtime_error("critical_theta: refinement bracket lost the root");
        while (hi - lo > 1e-3) {
            const double mid = 0.5 * (lo + hi);
            (worst_case_log_ps(wf, db_to_linear(mid)) > target ? lo : hi) = mid;
        }
        return {x, 0.5 * (lo + hi), lattice, alpha};
    }
}

} // namespace sirmeta
