#include "sirmeta/moments.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sirmeta/common.hpp"
#include "sirmeta/hyp2f1.hpp"

namespace sirmeta {

namespace {

using cd = std::complex<double>;

double tier_gain(const TierSpec& t, std::size_t k) {
    if (!t.gain) {
        std::ostringstream msg;
        msg << "hcn moments: tier " << k << " (" << kind_name(t.kind) << ") has no gain set";
        throw std::invalid_argument(msg.str());
    }
    return *t.gain;
}

} // namespace

std::complex<double> mb_ppp(std::complex<double> b, double delta, double theta) {
    return 1.0 / hyp_f(b, delta, theta);
}

double mb_ppp(double b, double delta, double theta) { return 1.0 / hyp_f(b, delta, theta); }

bool HcnSpec::all_alpha_equal() const {
    for (const auto& t : tiers)
        if (t.alpha != tiers.front().alpha) return false;
    return true;
}

void HcnSpec::validate() const {
    validate_tiers(tiers);
    for (std::size_t k = 0; k < tiers.size(); ++k) tier_gain(tiers[k], k);
}

std::complex<double> mb_hcn_hat(const HcnSpec& spec, std::complex<double> b, double theta) {
    spec.validate();
    if (!(theta >= 0.0)) throw std::invalid_argument("mb_hcn_hat: theta must be >= 0");
    if (theta == 0.0 || b == 0.0) return 1.0;

    const std::size_t K = spec.tiers.size();
    // Per-tier hypergeometric factors: the serving tier sees theta / G_k, the
    // cross-tier interference terms keep plain theta.
    std::vector<cd> f_serv(K), f_cross(K);
    for (std::size_t k = 0; k < K; ++k) {
        const auto& t = spec.tiers[k];
        f_serv[k] = hyp_f(b, t.delta(), theta / tier_gain(t, k));
        f_cross[k] = hyp_f(b, t.delta(), theta);
    }

    boost::math::quadrature::exp_sinh<double> integ;
    cd total = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        const auto& tk = spec.tiers[k];
        if (!(f_serv[k].real() > 0.0)) {
            std::ostringstream msg;
            msg << "mb_hcn_hat: tier " << k << " moment diverges (Re F = " << f_serv[k].real()
                << " <= 0)";
            throw std::runtime_error(msg.str());
        }
        // rho_ik s^(alpha_k/alpha_i) couples tier i interference into the
        // serving-distance integral of tier k (s = lambda_k pi r^2).
        struct Cross {
            double rho;
            double expo;
            cd f;
        };
        std::vector<Cross> cross;
        const double lk_pi = tk.density * pi;
        for (std::size_t i = 0; i < K; ++i) {
            if (i == k) continue;
            const auto& ti = spec.tiers[i];
            const double p_ik = ti.power / tk.power;
            const double expo = tk.alpha / ti.alpha;
            const double rho = ti.density * pi * std::pow(p_ik, ti.delta()) /
                               std::pow(lk_pi, expo);
            if (!(f_cross[i].real() > 0.0)) {
                std::ostringstream msg;
                msg << "mb_hcn_hat: tier " << i << " cross term diverges (Re F = "
                    << f_cross[i].real() << " <= 0)";
                throw std::runtime_error(msg.str());
            }
            cross.push_back({rho, expo, f_cross[i]});
        }
        auto exponent = [&](double s) {
            cd e = -s * f_serv[k];
            for (const auto& c : cross) e -= c.rho * std::pow(s, c.expo) * c.f;
            return e;
        };
        auto component = [&](bool imag_part) {
            auto f = [&](double s) {
                const cd v = std::exp(exponent(s));
                return imag_part ? v.imag() : v.real();
            };
            double err = 0.0, l1 = 0.0;
            const double val = integ.integrate(f, 1e-9, &err, &l1);
            if (err > 1e-7 * std::max(1.0, l1)) {
                std::ostringstream msg;
                msg << "mb_hcn_hat: tier " << k << " quadrature failed (residual " << err << ")";
                throw std::runtime_error(msg.str());
            }
            return val;
        };
        total += cd(component(false), component(true));
    }
    return total;
}

double mb_hcn_hat(const HcnSpec& spec, double b, double theta) {
    return mb_hcn_hat(spec, cd(b, 0.0), theta).real();
}

std::complex<double> mb_hcn_equal_alpha(const HcnSpec& spec, std::complex<double> b,
                                        double theta) {
    spec.validate();
    if (!spec.all_alpha_equal())
        throw std::invalid_argument("mb_hcn_equal_alpha: tiers have different alpha");
    if (theta == 0.0 || b == 0.0) return 1.0;
    const double delta = spec.tiers.front().delta();
    cd total = 0.0;
    for (std::size_t k = 0; k < spec.tiers.size(); ++k) {
        const auto& tk = spec.tiers[k];
        cd denom = hyp_f(b, delta, theta / tier_gain(tk, k));
        for (std::size_t i = 0; i < spec.tiers.size(); ++i) {
            if (i == k) continue;
            const auto& ti = spec.tiers[i];
            denom += (ti.density / tk.density) * std::pow(ti.power / tk.power, delta) *
                     hyp_f(b, delta, theta);
        }
        total += 1.0 / denom;
    }
    return total;
}

} // namespace sirmeta
