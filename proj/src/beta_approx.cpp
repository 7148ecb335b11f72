#include "sirmeta/beta_approx.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sirmeta {

BetaFit fit_beta_moments(double m1, double m2) {
    if (!(m1 >= 0.0 && m1 <= 1.0) || !std::isfinite(m2)) {
        std::ostringstream msg;
        msg << "fit_beta_moments: invalid moments m1 = " << m1 << ", m2 = " << m2;
        throw std::domain_error(msg.str());
    }
    const double slack = 1e-12;
    if (m2 > m1 + slack || m2 < m1 * m1 - slack) {
        std::ostringstream msg;
        msg << "fit_beta_moments: (m1, m2) = (" << m1 << ", " << m2
            << ") violates m1^2 <= m2 <= m1";
        throw std::domain_error(msg.str());
    }
    const double var = m2 - m1 * m1;
    BetaFit fit;
    fit.m1 = m1;
    if (var <= slack * std::max(1.0, m1) || m1 == 0.0 || m1 == 1.0) {
        fit.degenerate = true;
        return fit;
    }
    const double c = m1 * (1.0 - m1) / var - 1.0;
    if (!(c > 0.0)) {
        std::ostringstream msg;
        msg << "fit_beta_moments: variance " << var << " too large for a beta law at mean " << m1;
        throw std::domain_error(msg.str());
    }
    fit.a = m1 * c;
    fit.b = (1.0 - m1) * c;
    return fit;
}

double beta_ccdf(const BetaFit& fit, double x) {
    if (x <= 0.0) return 1.0;
    if (x >= 1.0) return 0.0;
    if (fit.degenerate) return x < fit.m1 ? 1.0 : 0.0;
    return boost::math::ibetac(fit.a, fit.b, x);
}

} // namespace sirmeta
