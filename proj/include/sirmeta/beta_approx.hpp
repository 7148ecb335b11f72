#pragma once

namespace sirmeta {

// Beta distribution matched to the first two moments of a [0, 1] variable.
// A vanishing variance (m2 == m1^2 within rounding) degenerates to the point
// mass at m1, whose ccdf is the step 1{x < m1}.
struct BetaFit {
    double a = 0.0;
    double b = 0.0;
    double m1 = 0.0;
    bool degenerate = false;
};

// Throws std::domain_error unless 0 < m1 < 1 (or m1 in {0,1} exactly, treated
// as degenerate) and m1^2 <= m2 <= m1 up to rounding slack.
BetaFit fit_beta_moments(double m1, double m2);

// P(X > x) for the fitted distribution; x outside [0, 1] resolves to 1 / 0.
double beta_ccdf(const BetaFit& fit, double x);

} // namespace sirmeta
