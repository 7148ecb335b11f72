#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sirmeta/gains.hpp"
#include "sirmeta/metasim.hpp"
#include "sirmeta/moments.hpp"

using namespace sirmeta;

namespace {

std::vector<TierSpec> single_tier(const ProcessKind& kind, double density, double alpha = 4.0) {
    return {make_tier(kind, density, 1.0, alpha)};
}

} // namespace

TEST_SUITE("mc") {

TEST_CASE("fast kernel matches the serial reference sample by sample") {
    const Window w{40.0};
    const std::vector<double> theta_db = {-15.0, -5.0, 0.0, 5.0, 15.0};
    const std::vector<double> x = {0.5, 0.9};
    const std::uint64_t n = 400, seed = 314;

    for (const ProcessKind& kind :
         {ProcessKind{Poisson{}}, ProcessKind{MaternCluster{0.025, 4.0, 0.6}}}) {
        CAPTURE(kind_name(kind));
        const auto tiers = single_tier(kind, 0.1);
        const auto fast = simulate_meta(tiers, w, theta_db, x, n, seed);
        const auto ref = simulate_meta_reference(tiers, w, theta_db, x, n, seed);

        REQUIRE(fast.n == n);
        REQUIRE(ref.n == n);
        CHECK(fast.resampled == ref.resampled);
        REQUIRE(fast.isr.size() == n);
        for (std::uint64_t r = 0; r < n; ++r)
            CHECK(static_cast<double>(fast.isr[r]) ==
                  doctest::Approx(static_cast<double>(ref.isr[r])).epsilon(1e-6));
        double max_diff = 0.0;
        for (std::size_t i = 0; i < theta_db.size(); ++i)
            for (std::uint64_t r = 0; r < n; ++r)
                max_diff = std::max(max_diff,
                                    std::abs(static_cast<double>(fast.log_ps[i][r]) -
                                             static_cast<double>(ref.log_ps[i][r])));
        // Both paths round to float at the end; they may differ by at most
        // one float ulp on top of the 1e-12-level profile error.
        CHECK(max_diff < 1e-5);
    }
}

TEST_CASE("two-tier simulation also matches the reference") {
    const Window w{35.0};
    std::vector<TierSpec> tiers = {
        make_tier(ProcessKind{TriangularLattice{eta_for_density(0.08)}}, std::nullopt, 1.0, 4.0),
        make_tier(ProcessKind{Poisson{}}, 0.04, 5.0, 3.5),
    };
    const std::vector<double> theta_db = {-10.0, 0.0, 10.0};
    const auto fast = simulate_meta(tiers, w, theta_db, {0.9}, 200, 99);
    const auto ref = simulate_meta_reference(tiers, w, theta_db, {0.9}, 200, 99);
    for (std::size_t i = 0; i < theta_db.size(); ++i)
        for (std::uint64_t r = 0; r < 200; ++r)
            CHECK(fast.log_ps[i][r] == doctest::Approx(ref.log_ps[i][r]).epsilon(1e-5));
}

TEST_CASE("empirical PPP statistics approach the closed forms") {
    // MISR of the PPP is 2/(alpha-2) = 1 at alpha = 4; M_1 has a closed form.
    const Window w{150.0};
    const std::vector<double> theta_db = {0.0};
    const auto sim = simulate_meta(single_tier(ProcessKind{Poisson{}}, 0.1), w, theta_db, {0.9},
                                   4000, 2718);
    CHECK(sim.misr() == doctest::Approx(1.0).epsilon(0.05));
    CHECK(sim.misr() - 3.0 * sim.misr_stderr() < 1.0);
    CHECK(sim.misr() + 3.0 * sim.misr_stderr() > 1.0);

    const double theta = 1.0;
    const double m1_exact = 1.0 / (1.0 + std::sqrt(theta) * std::atan(std::sqrt(theta)));
    CHECK(sim.moment(0, 1.0) == doctest::Approx(m1_exact).epsilon(0.03));
    CHECK(std::abs(sim.moment(0, 1.0) - m1_exact) < 4.0 * sim.moment_stderr(0, 1.0) + 5e-3);

    // ccdf consistency: moment equals the integral of the ccdf over x.
    double integral = 0.0;
    const int nx = 200;
    for (int i = 0; i < nx; ++i) integral += sim.ccdf(0, (i + 0.5) / nx) / nx;
    CHECK(integral == doctest::Approx(sim.moment(0, 1.0)).epsilon(0.01));
}

TEST_CASE("ccdf and curve accessors are consistent") {
    const Window w{40.0};
    const std::vector<double> theta_db = {-5.0, 5.0};
    const std::vector<double> x = {0.3, 0.7, 0.95};
    const auto sim = simulate_meta(single_tier(ProcessKind{Poisson{}}, 0.1), w, theta_db, x, 500,
                                   1234);
    const auto curve = sim.ccdf_curve();
    REQUIRE(curve.theta_db == theta_db);
    REQUIRE(curve.x == x);
    CHECK(curve.provenance == MetaCurve::Provenance::empirical);
    for (std::size_t i = 0; i < theta_db.size(); ++i) {
        double prev = 1.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            CHECK(curve.fbar[i][j] == doctest::Approx(sim.ccdf(i, x[j])));
            CHECK(curve.fbar[i][j] <= prev);    // decreasing in x
            prev = curve.fbar[i][j];
            const double f = curve.fbar[i][j];
            const double se = std::sqrt(f * (1.0 - f) / 500.0);
            CHECK(curve.stderr_[i][j] == doctest::Approx(se).epsilon(1e-9));
        }
        // F(theta) decreasing in theta at fixed x.
        if (i > 0) CHECK(curve.fbar[i][0] <= curve.fbar[i - 1][0] + 1e-12);
    }
}

TEST_CASE("empty realizations are resampled and counted") {
    // Density 0.1 on a 3x3 window: ~41% of realizations start empty.
    const Window w{1.5};
    const auto sim = simulate_meta(single_tier(ProcessKind{Poisson{}}, 0.1), w, {0.0}, {0.9}, 300,
                                   555);
    CHECK(sim.n == 300);
    CHECK(sim.resampled > 50);
    const auto ref = simulate_meta_reference(single_tier(ProcessKind{Poisson{}}, 0.1), w, {0.0},
                                             {0.9}, 300, 555);
    CHECK(ref.resampled == sim.resampled);
    for (std::uint64_t r = 0; r < 300; ++r)
        CHECK(sim.log_ps[0][r] == doctest::Approx(ref.log_ps[0][r]).epsilon(1e-5));
}

TEST_CASE("a hopelessly empty window gives up with a clear error") {
    const Window w{1e-4};
    CHECK_THROWS_WITH_AS(
        (void)simulate_meta(single_tier(ProcessKind{Poisson{}}, 0.1), w, {0.0}, {0.9}, 4, 1),
        doctest::Contains("attempts"), std::runtime_error);
}

TEST_CASE("G0 of a PPP is 0 dB and its error scales like 1/sqrt(n)") {
    const Window w{60.0};
    const auto g1 = estimate_g0(ProcessKind{Poisson{}}, 4.0, w, 500, 42, 0.1);
    CHECK(std::abs(g1.value_db) < 0.5);
    CHECK(std::abs(g1.value_db) < 4.0 * g1.std_error_db + 0.05);

    const auto g2 = estimate_g0(ProcessKind{Poisson{}}, 4.0, w, 2000, 42, 0.1);
    CHECK(g2.std_error_db < g1.std_error_db);
    CHECK(g2.std_error_db == doctest::Approx(g1.std_error_db / 2.0).epsilon(0.35));

    // Poisson kind requires an explicit density.
    CHECK_THROWS_AS((void)estimate_g0(ProcessKind{Poisson{}}, 4.0, w, 10, 1), std::invalid_argument);
}

TEST_CASE("G0 of the lattice is positive and of clustered models negative") {
    const Window w{60.0};
    const auto lat = estimate_g0(ProcessKind{TriangularLattice{eta_for_density(0.1)}}, 4.0, w,
                                 800, 77);
    CHECK(lat.value_db > 2.0);
    CHECK(lat.value_db < 5.0);
    const auto mcp = estimate_g0(ProcessKind{MaternCluster{0.025, 4.0, 0.5}}, 4.0, w, 800, 77);
    CHECK(mcp.value_db < -2.0);
}

TEST_CASE("G_b of a PPP is close to 0 dB") {
    const Window w{60.0};
    const auto g = estimate_gb(0.0, 1.0, ProcessKind{Poisson{}}, 4.0, w, 1500, 8, 0.1);
    CHECK(std::abs(g.value_db) < 0.5);
    CHECK(g.std_error_db > 0.0);
    CHECK(g.n == 1500);
}

TEST_CASE("worst-case lattice success probability") {
    const TriangularLattice lat{1.0};
    const double alpha = 4.0;

    // Monotone decreasing in theta, within (0, 1).  (The truncation radius
    // grows like sqrt(theta), so stay below -6 dB to keep the enumeration
    // small.)
    double prev = 1.0;
    for (double theta_db = -30.0; theta_db <= -6.0; theta_db += 6.0) {
        const double ps = worst_case_ps(lat, alpha, db_to_linear(theta_db));
        CHECK(ps < prev);
        CHECK(ps > 0.0);
        CHECK(ps < 1.0);
        prev = ps;
    }

    // Scale invariance: P_s depends only on theta, not on eta.
    CHECK(worst_case_ps(TriangularLattice{3.0}, alpha, 0.1) ==
          doctest::Approx(worst_case_ps(lat, alpha, 0.1)).epsilon(1e-9));

    // An explicit radius below the accuracy requirement is rejected.
    CHECK_THROWS_WITH_AS((void)worst_case_ps(lat, alpha, 1.0, 3.0), doctest::Contains("radius"),
                         std::invalid_argument);
    // A generous explicit radius agrees with the automatic choice.
    CHECK(worst_case_ps(lat, alpha, 0.05, 2000.0) ==
          doctest::Approx(worst_case_ps(lat, alpha, 0.05)).epsilon(1e-7));
}

TEST_CASE("critical theta inverts the worst-case curve") {
    const TriangularLattice lat{1.0};
    const auto crit = critical_theta(lat, 4.0, 0.9);
    CHECK(crit.x == 0.9);
    // At the threshold the worst-case P_s equals x; 1e-3 dB bisection.
    const double ps = worst_case_ps(lat, 4.0, db_to_linear(crit.theta_c_db));
    CHECK(ps == doctest::Approx(0.9).epsilon(1e-3));
    // Tighter x gives a smaller threshold.
    const auto crit95 = critical_theta(lat, 4.0, 0.95);
    CHECK(crit95.theta_c_db < crit.theta_c_db);
}

} // TEST_SUITE
