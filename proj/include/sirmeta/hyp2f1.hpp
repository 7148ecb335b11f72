#pragma once

#include <complex>

namespace sirmeta {

// log Gamma(z) on the principal branch, valid away from the non-positive
// reals (all uses here have |Im z| > 0 or Re z > 0).
std::complex<double> log_gamma(std::complex<double> z);

// F(b, delta, theta) = 2F1(b, -delta; 1 - delta; -theta), the Gauss
// hypergeometric factor appearing in every PPP moment expression, for complex
// order b (Gil-Pelaez needs b = j t with t up to ~1e6) and delta = 2/alpha in
// (0, 1), theta >= 0.
//
// Two evaluation routes, selected automatically and cross-validated in tests:
//  - double-exponential quadrature of the equivalent finite integral
//        F = 1 + delta * Int_0^1 (1 - (1+theta u)^-b) u^(-1-delta) du,
//    exact for any b but increasingly oscillatory as |Im b| grows;
//  - for large |b| theta, a closed form via the Beta function plus a
//    boundary-term asymptotic series obtained by integration by parts:
//        F = b theta^delta B(b+delta, 1-delta)
//            - (1+theta)^-b * sum_{k>=1} P_k(1+theta) / (theta b)^k,
//    where the P_k are polynomials from the derivative recurrence of
//    (e^y - 1)^-delta.
//
// Throws std::invalid_argument on bad (delta, theta) and std::runtime_error
// carrying the achieved residual if the quadrature fails to converge.
std::complex<double> hyp_f(std::complex<double> b, double delta, double theta);

// Real-order convenience overload.
double hyp_f(double b, double delta, double theta);

namespace detail {

// The two routes individually, so tests can cross-validate them on the
// overlap region.  hyp_f_asymptotic returns false where its series cannot
// reach full accuracy.
std::complex<double> hyp_f_quadrature(std::complex<double> b, double delta, double theta);
bool hyp_f_asymptotic(std::complex<double> b, double delta, double theta,
                      std::complex<double>& out);

} // namespace detail

} // namespace sirmeta
