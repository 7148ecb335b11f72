#pragma once

#include <complex>
#include <vector>

#include "sirmeta/process.hpp"

namespace sirmeta {

// b-th moment of the conditional success probability for the Poisson network
// (also the HIP model moment): M_b = 1 / F(b, delta, theta).
std::complex<double> mb_ppp(std::complex<double> b, double delta, double theta);
double mb_ppp(double b, double delta, double theta);

// Heterogeneous network specification used by the analytic approximation:
// every tier must carry a calibrated (or assumed) gain.
struct HcnSpec {
    std::vector<TierSpec> tiers;

    bool all_alpha_equal() const;
    void validate() const; // parameters, densities, gains present
};

// Approximate moment of the K-tier general network: each tier's own gain
// shifts only the serving-tier factor, interference from other tiers keeps
// the unshifted PPP factor.  General path-loss exponents; the radial integral
// is evaluated by double-exponential quadrature on (0, inf).
std::complex<double> mb_hcn_hat(const HcnSpec& spec, std::complex<double> b, double theta);
double mb_hcn_hat(const HcnSpec& spec, double b, double theta);

// Closed form valid when all tiers share one path-loss exponent; kept as an
// independent route and cross-checked against the quadrature version.
std::complex<double> mb_hcn_equal_alpha(const HcnSpec& spec, std::complex<double> b, double theta);

// Moments tabulated over a (b, theta) grid.
struct MomentGrid {
    std::vector<std::complex<double>> b;
    std::vector<double> theta_db;
    std::vector<std::vector<std::complex<double>>> m; // m[i][j] = M_{b[i]}(theta[j])
};

} // namespace sirmeta
