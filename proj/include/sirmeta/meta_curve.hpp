#pragma once

#include <string>
#include <vector>

namespace sirmeta {

// A family of ccdf curves F(theta, x) on a rectangular (theta, x) grid,
// tagged with how it was produced.
struct MetaCurve {
    enum class Provenance { analytic_gp, beta, empirical, shifted };

    std::vector<double> theta_db;
    std::vector<double> x;
    std::vector<std::vector<double>> fbar;    // fbar[i][j] = F(theta_db[i], x[j])
    std::vector<std::vector<double>> stderr_; // same shape; 0 where not applicable
    Provenance provenance = Provenance::empirical;
};

std::string provenance_name(MetaCurve::Provenance p);

// Horizontal shift on the dB axis: the curve of a network with gain G is the
// base curve read at theta / G, i.e. every theta label moves by gain_db while
// the values stay untouched.  Shifting by g then -g restores the original.
MetaCurve shifted_meta(const MetaCurve& base, double gain_db);

// Value lookup on the exact grid (1e-9 dB slack); throws std::out_of_range
// naming the available coverage when (theta_db, x) is not a grid point.
double meta_value_at(const MetaCurve& curve, double theta_db, double x);

} // namespace sirmeta
