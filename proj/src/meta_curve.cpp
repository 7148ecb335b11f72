#include "sirmeta/meta_curve.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sirmeta {

std::string provenance_name(MetaCurve::Provenance p) {
    switch (p) {
        case MetaCurve::Provenance::analytic_gp: return "analytic-GP";
        case MetaCurve::Provenance::beta: return "beta";
        case MetaCurve::Provenance::empirical: return "empirical";
        case MetaCurve::Provenance::shifted: return "shifted";
    }
    return "?";
}

MetaCurve shifted_meta(const MetaCurve& base, double gain_db) {
    MetaCurve out = base;
    for (double& t : out.theta_db) t += gain_db;
    out.provenance = MetaCurve::Provenance::shifted;
    return out;
}

double meta_value_at(const MetaCurve& curve, double theta_db, double x) {
    const double tol = 1e-9;
    for (std::size_t i = 0; i < curve.theta_db.size(); ++i) {
        if (std::abs(curve.theta_db[i] - theta_db) > tol) continue;
        for (std::size_t j = 0; j < curve.x.size(); ++j)
            if (std::abs(curve.x[j] - x) <= tol) return curve.fbar[i][j];
    }
    std::ostringstream msg;
    msg << "meta_value_at: (" << theta_db << " dB, x = " << x << ") not on the grid";
    if (!curve.theta_db.empty())
        msg << "; theta coverage [" << curve.theta_db.front() << ", " << curve.theta_db.back()
            << "] dB over " << curve.theta_db.size() << " points";
    throw std::out_of_range(msg.str());
}

} // namespace sirmeta
