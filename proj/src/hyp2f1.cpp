#include "sirmeta/hyp2f1.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace sirmeta {

namespace {

using cd = std::complex<double>;

// Lanczos approximation (g = 7, n = 9), ~1e-13 relative accuracy on the right
// half plane; the recurrence lgamma(z) = lgamma(z+1) - log z extends it left.
const double kLanczos[] = {
    0.99999999999980993,    676.5203681218851,     -1259.1392167224028,
    771.32342877765313,     -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,   9.9843695780195716e-6, 1.5056327351493116e-7,
};

cd log_gamma_core(cd z) {
    z -= 1.0;
    cd x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    const cd t = z + 7.5;
    return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(x);
}

// exp(z) - 1 without cancellation for small |z|.
cd expm1c(cd z) {
    if (std::abs(z) < 1e-3) {
        // z + z^2/2 + z^3/6 + z^4/24; next term < 1e-18 relative
        return z * (1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0)));
    }
    return std::exp(z) - 1.0;
}

// 1 - (1 + theta u)^-b, stable down to u near the rounding floor.
cd one_minus_pow(cd b, double theta, double u) {
    return -expm1c(-b * std::log1p(theta * u));
}

struct QuadratureFailure {
    double residual;
};

} // namespace

namespace detail {

cd hyp_f_quadrature(cd b, double delta, double theta) {
    boost::math::quadrature::tanh_sinh<double> integ(15);
    // Split the complex integrand into two real passes; tanh_sinh's endpoint
    // behaviour (u as small as ~1e-280) is what one_minus_pow is hardened for.
    auto component = [&](bool imag_part) {
        auto f = [&](double u) {
            if (u <= 0.0) return 0.0;
            // Group as u^-delta * (g / u): both factors stay representable even
            // at u ~ 1e-280, while u^(-1-delta) alone would overflow.
            const cd q = one_minus_pow(b, theta, u) / u;
            return delta * std::pow(u, -delta) * (imag_part ? q.imag() : q.real());
        };
        double err = 0.0, l1 = 0.0;
        const double val = integ.integrate(f, 0.0, 1.0, 1e-11, &err, &l1);
        if (err > 1e-8 * std::max(1.0, l1)) throw QuadratureFailure{err};
        return val;
    };
    return 1.0 + cd(component(false), component(true));
}

// Asymptotic route; requires |theta b| large.  Returns false if the series
// fails to reach the requested accuracy before its terms start growing.
bool hyp_f_asymptotic(cd b, double delta, double theta, cd& out) {
    const cd beta_fn =
        std::exp(log_gamma(b + delta) + std::lgamma(1.0 - delta) - log_gamma(b + 1.0));
    const cd lead = b * std::pow(theta, delta) * beta_fn;

    // P_k from P_{k-1} via P_k = z[(z-1) P'_{k-1} - (delta + k - 1) P_{k-1}],
    // P_0 = 1, evaluated at z = 1 + theta.
    const double z = 1.0 + theta;
    std::vector<double> c{1.0}; // coefficients of P_{k-1}, ascending powers
    const cd w = 1.0 / (theta * b);
    cd pow_w = 1.0;
    cd series = 0.0;
    double prev_mag = HUGE_VAL;
    bool converged = false;
    for (int k = 1; k <= 30; ++k) {
        std::vector<double> next(c.size() + 1, 0.0);
        for (std::size_t j = 0; j < c.size(); ++j) {
            const double d = static_cast<double>(j) * c[j]; // P'_{k-1} coefficient of z^(j-1)
            // z * (z-1) * d z^(j-1) = d z^(j+1) - d z^j
            if (j >= 1) {
                next[j + 1] += d;
                next[j] -= d;
            }
            // -z (delta + k - 1) c_j z^j
            next[j + 1] -= (delta + static_cast<double>(k - 1)) * c[j];
        }
        c = std::move(next);
        double pk = 0.0;
        for (std::size_t j = c.size(); j-- > 0;) pk = pk * z + c[j];
        pow_w *= w;
        const cd term = pk * pow_w;
        const double mag = std::abs(term);
        if (mag > prev_mag) break; // divergent tail reached
        series += term;
        prev_mag = mag;
        if (mag < 1e-15 * std::max(1.0, std::abs(lead))) {
            converged = true;
            break;
        }
    }
    if (!converged && prev_mag > 1e-11 * std::max(1.0, std::abs(lead))) return false;
    out = lead - std::exp(-b * std::log1p(theta)) * series;
    return true;
}

} // namespace detail

std::complex<double> log_gamma(std::complex<double> z) {
    cd shift = 0.0;
    while (z.real() < 0.5) {
        shift += std::log(z);
        z += 1.0;
    }
    return log_gamma_core(z) - shift;
}

std::complex<double> hyp_f(std::complex<double> b, double delta, double theta) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("hyp_f: delta must lie in (0, 1)");
    if (!(theta >= 0.0)) throw std::invalid_argument("hyp_f: theta must be >= 0");
    if (theta == 0.0 || b == 0.0) return 1.0;

    const bool oscillatory = std::abs(b.imag()) >= 20.0;
    const bool series_safe = std::abs(b) * theta / (1.0 + theta) >= 30.0;
    if (oscillatory && series_safe) {
        cd out;
        if (detail::hyp_f_asymptotic(b, delta, theta, out)) return out;
    }
    try {
        return detail::hyp_f_quadrature(b, delta, theta);
    } catch (const QuadratureFailure& qf) {
        std::ostringstream msg;
        msg << "hyp_f: quadrature failed to converge (b = " << b.real() << "+" << b.imag()
            << "j, delta = " << delta << ", theta = " << theta
            << ", residual = " << qf.residual << ")";
        throw std::runtime_error(msg.str());
    }
}

double hyp_f(double b, double delta, double theta) {
    return hyp_f(cd(b, 0.0), delta, theta).real();
}

} // namespace sirmeta
