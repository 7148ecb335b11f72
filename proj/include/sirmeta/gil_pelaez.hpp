#pragma once

#include <complex>
#include <functional>

namespace sirmeta {

// Options for the Gil-Pelaez inversion of imaginary moments.
struct GilPelaezOptions {
    double block_abs_tol = 3e-9; // absolute tolerance per dyadic block
    double mag_cutoff = 1e-8;    // stop once |M_jt| / t falls below this
    double t_max = 4e6;          // hard cap; exceeding it raises an error
};

struct GilPelaezResult {
    double value = 0.0;      // ccdf after clamping to [0, 1]
    double err_estimate = 0.0;
    bool clamped = false;
};

// Number of inversions so far whose raw value fell (slightly) outside [0, 1]
// and was clamped; tiny excursions are expected from oscillatory quadrature.
long gil_pelaez_clamp_count();

// P(P_s > x) = 1/2 + (1/pi) Int_0^inf Im(e^{-jt log x} M_jt) / t dt, where
// m_jt(t) supplies the imaginary moment M_jt(theta).  x outside (0, 1) is
// resolved by the limits F(0) = 1, F(1) = 0.  The t axis is covered by dyadic
// blocks, each integrated by locally adaptive Gauss-Kronrod; truncation when
// |M_jt| / t drops below mag_cutoff.  Throws std::runtime_error carrying the
// achieved residual when a block or the truncation cap fails.
GilPelaezResult gil_pelaez_ex(const std::function<std::complex<double>(double)>& m_jt, double x,
                              const GilPelaezOptions& opts = {});

double gil_pelaez(const std::function<std::complex<double>(double)>& m_jt, double x,
                  const GilPelaezOptions& opts = {});

} // namespace sirmeta
