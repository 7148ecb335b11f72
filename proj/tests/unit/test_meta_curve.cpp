#include <doctest.h>

#include <stdexcept>

#include "sirmeta/meta_curve.hpp"

using namespace sirmeta;

namespace {

MetaCurve sample_curve() {
    MetaCurve c;
    c.theta_db = {-10.0, 0.0, 10.0};
    c.x = {0.9, 0.95};
    c.fbar = {{0.8, 0.7}, {0.6, 0.5}, {0.4, 0.3}};
    c.stderr_ = {{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}};
    c.provenance = MetaCurve::Provenance::analytic_gp;
    return c;
}

} // namespace

TEST_SUITE("meta_curve") {

TEST_CASE("provenance names") {
    CHECK(provenance_name(MetaCurve::Provenance::analytic_gp) == "analytic-GP");
    CHECK(provenance_name(MetaCurve::Provenance::beta) == "beta");
    CHECK(provenance_name(MetaCurve::Provenance::empirical) == "empirical");
    CHECK(provenance_name(MetaCurve::Provenance::shifted) == "shifted");
}

TEST_CASE("shift relabels the theta axis and keeps the values") {
    const auto base = sample_curve();
    const auto s = shifted_meta(base, 3.6);
    REQUIRE(s.theta_db.size() == 3);
    CHECK(s.theta_db[0] == doctest::Approx(-6.4));
    CHECK(s.theta_db[2] == doctest::Approx(13.6));
    CHECK(s.fbar == base.fbar);
    CHECK(s.provenance == MetaCurve::Provenance::shifted);

    // Shifting back restores the original labels.
    const auto back = shifted_meta(s, -3.6);
    for (std::size_t i = 0; i < base.theta_db.size(); ++i)
        CHECK(back.theta_db[i] == doctest::Approx(base.theta_db[i]).epsilon(1e-12));
}

TEST_CASE("grid lookup with slack") {
    const auto c = sample_curve();
    CHECK(meta_value_at(c, 0.0, 0.95) == doctest::Approx(0.5));
    CHECK(meta_value_at(c, -10.0 + 1e-10, 0.9) == doctest::Approx(0.8));
    CHECK_THROWS_AS((void)meta_value_at(c, 5.0, 0.9), std::out_of_range);
    CHECK_THROWS_AS((void)meta_value_at(c, 0.0, 0.93), std::out_of_range);
    CHECK_THROWS_WITH_AS((void)meta_value_at(c, 25.0, 0.9),
                         doctest::Contains("theta"), std::out_of_range);
}

} // TEST_SUITE
