// Acceptance gate: end-to-end checks of the toolkit against frozen reference
// values for the default parameter family (density 0.1, path loss exponent 4
// unless stated).  Each criterion prints one [PASS]/[FAIL] line; the exit code
// is the number of failures.  Expect a run time of roughly half an hour at the
// default sample count.

#include <CLI11.hpp>

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "sirmeta/common.hpp"
#include "sirmeta/gains.hpp"
#include "sirmeta/gil_pelaez.hpp"
#include "sirmeta/metasim.hpp"
#include "sirmeta/moments.hpp"
#include "sirmeta/process.hpp"

namespace {

using namespace sirmeta;
using cd = std::complex<double>;

// ---------------------------------------------------------------------------
// Reference values (default parameter family).

struct Model {
    const char* name;
    ProcessKind kind;
    double ref_g0_db; // alpha = 4
};

std::vector<Model> reference_models() {
    const double eta = eta_for_density(0.1);
    return {
        {"triangular-lattice", ProcessKind{TriangularLattice{eta}}, 3.6099},
        {"perturbed-triangular-lattice", ProcessKind{PerturbedTriangularLattice{eta, 0.5 * eta}},
         1.8343},
        {"gauss-poisson", ProcessKind{GaussPoisson{1.0 / 15.0, 0.5, 1.0}}, -1.3768},
        {"matern-cluster", ProcessKind{MaternCluster{0.01, 10.0, 4.0}}, -5.1702},
    };
}

// Gauss-Poisson gain across the path loss exponent.
constexpr struct {
    double alpha, ref_db;
} kAlphaSweep[] = {{3.5, -1.3423}, {3.0, -1.2558}, {2.5, -0.8661}};

// Effective gains of two-tier <model>/PPP networks (equal densities and
// powers) computed from the per-tier reference gains above, and the
// three-tier gauss-poisson/matern-cluster/PPP value.
constexpr double kGeffTwoTierRefDb[] = {1.2190, 0.5361, -0.3064, -0.8301};
constexpr double kGeffThreeTierRefDb = -0.4959;

constexpr double kThetaCriticalRefDb = -16.68; // lattice, x = 0.95, alpha = 4

// Tolerances.
constexpr double kTolG0Db = 0.15;
constexpr double kTolMetaPpp = 0.02;  // empirical vs analytic, same model
constexpr double kTolMetaShift = 0.03; // empirical vs shifted-PPP approximation
constexpr double kTolGeff2Db = 0.01;
constexpr double kTolGeff3Db = 0.02;
constexpr double kTolThetaCDb = 0.05;
constexpr double kTolLowTheta = 0.05;

// ---------------------------------------------------------------------------
// Shared, lazily computed expensive state.

struct Ctx {
    std::uint64_t n = 100000;
    std::uint64_t seed = 1905;
    double half_extent = 150.0;  // meta-distribution simulations
    double g0_window = 500.0;    // single-tier gain runs (criterion 1)
    double sweep_window = 250.0; // gain-vs-alpha runs (criterion 2)

    std::vector<double> theta_grid_db; // {-30} + [-20, 10] in 1 dB steps
    std::vector<Model> models = reference_models();

    Ctx() {
        theta_grid_db.push_back(-30.0);
        for (double t = -20.0; t <= 10.0 + 1e-9; t += 1.0) theta_grid_db.push_back(t);
    }

    // Index 0..3: the four models above; index 4: the PPP at the same density.
    const EmpiricalMeta& sim(std::size_t idx) {
        if (!sims_[idx]) {
            const bool ppp = idx == 4;
            const TierSpec tier =
                ppp ? make_tier(ProcessKind{Poisson{}}, 0.1, 1.0, 4.0)
                    : make_tier(models[idx].kind, std::nullopt, 1.0, 4.0);
            std::cerr << "  [setup] simulating " << (ppp ? "ppp" : models[idx].name) << " (n = "
                      << n << ", L = " << half_extent << ") ..." << std::endl;
            sims_[idx] = std::make_unique<EmpiricalMeta>(
                simulate_meta({tier}, Window{half_extent}, theta_grid_db, {0.95}, n,
                              seed + 1000003 * idx));
        }
        return *sims_[idx];
    }

    // Large-window gain estimates shared by criteria 1 and 11.
    const GainEstimate& g0(std::size_t idx) {
        if (!g0_[idx]) {
            std::cerr << "  [setup] estimating G0 for " << models[idx].name << " (n = " << n
                      << ", L = " << g0_window << ") ..." << std::endl;
            g0_[idx] = estimate_g0(models[idx].kind, 4.0, Window{g0_window}, n, seed);
        }
        return *g0_[idx];
    }

    double theta_c_db() {
        if (!theta_c_) theta_c_ = critical_theta(TriangularLattice{1.0}, 4.0, 0.95).theta_c_db;
        return *theta_c_;
    }

  private:
    std::array<std::unique_ptr<EmpiricalMeta>, 5> sims_;
    std::array<std::optional<GainEstimate>, 4> g0_;
    std::optional<double> theta_c_;
};

// Analytic PPP meta value by Gil-Pelaez inversion, with per-theta caching of
// the imaginary moments (several x share one theta in criterion 4).
class PppMeta {
  public:
    explicit PppMeta(double theta) : theta_(theta) {}
    double operator()(double x) const {
        auto m = [this](double t) {
            const auto key = std::bit_cast<std::uint64_t>(t);
            if (auto it = cache_.find(key); it != cache_.end()) return it->second;
            const cd v = mb_ppp(cd(0.0, t), 0.5, theta_);
            cache_.emplace(key, v);
            return v;
        };
        return gil_pelaez(m, x);
    }

  private:
    double theta_;
    mutable std::unordered_map<std::uint64_t, cd> cache_;
};

double fbar_ppp(double theta_db, double x) { return PppMeta(db_to_linear(theta_db))(x); }

// Independent Gauss-series evaluation of F(b, delta, theta) for theta < 1,
// used to cross-check the production implementation.
cd f_series(cd b, double delta, double theta) {
    cd term = 1.0, sum = 1.0;
    for (int k = 0; k < 4000; ++k) {
        const double kk = static_cast<double>(k);
        term *= (b + kk) * (-delta + kk) / ((1.0 - delta + kk) * (kk + 1.0)) * (-theta);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) return sum;
    }
    throw std::runtime_error("f_series: no convergence (theta too close to 1?)");
}

// ---------------------------------------------------------------------------
// Criteria.

struct Line {
    std::ostringstream os;
    ~Line() { std::cout << "    " << os.str() << std::endl; }
};
#define DETAIL Line{}.os

bool criterion_1(Ctx& c) {
    bool ok = true;
    for (std::size_t i = 0; i < c.models.size(); ++i) {
        const auto& m = c.models[i];
        const auto& est = c.g0(i);
        const double err = std::abs(est.value_db - m.ref_g0_db);
        ok &= err <= kTolG0Db;
        DETAIL << m.name << ": G0 = " << est.value_db << " dB (reference " << m.ref_g0_db
               << ", stderr " << est.std_error_db << ", |err| = " << err << ")";
    }
    return ok;
}

bool criterion_2(Ctx& c) {
    bool ok = true;
    const ProcessKind gp{GaussPoisson{1.0 / 15.0, 0.5, 1.0}};
    for (const auto& [alpha, ref] : kAlphaSweep) {
        const auto est = estimate_g0(gp, alpha, Window{c.sweep_window}, c.n, c.seed);
        const double err = std::abs(est.value_db - ref);
        ok &= err <= kTolG0Db;
        DETAIL << "alpha = " << alpha << " (L = " << c.sweep_window << "): G0 = " << est.value_db
               << " dB (reference " << ref << ", |err| = " << err << ")";
    }
    return ok;
}

bool criterion_3(Ctx&) {
    bool ok = true;
    // Closed form at alpha = 4: M_1 = 1 / (1 + sqrt(theta) atan sqrt(theta)).
    double worst = 0.0;
    for (double theta : {0.01, 0.1, 1.0, 10.0}) {
        const double closed = 1.0 / (1.0 + std::sqrt(theta) * std::atan(std::sqrt(theta)));
        const double got = mb_ppp(1.0, 0.5, theta);
        worst = std::max(worst, std::abs(got - closed) / closed);
    }
    ok &= worst <= 1e-6;
    DETAIL << "M1 closed form (alpha = 4): max rel err = " << worst << " (tol 1e-6)";

    // Production F against an independent power series, real and complex b.
    double worst_f = 0.0;
    for (double theta : {0.3, 0.6, 0.9})
        for (double delta : {0.4, 0.5, 0.8})
            for (cd b : {cd(1.0, 0.0), cd(2.5, 0.0), cd(0.0, 5.0), cd(1.0, -3.0)}) {
                const cd ref = f_series(b, delta, theta);
                const cd got = 1.0 / mb_ppp(b, delta, theta);
                worst_f = std::max(worst_f, std::abs(got - ref) / std::abs(ref));
            }
    ok &= worst_f <= 1e-8;
    DETAIL << "F vs independent series: max rel err = " << worst_f << " (tol 1e-8)";
    return ok;
}

bool criterion_4(Ctx&) {
    bool ok = true;
    using gauss = boost::math::quadrature::gauss<double, 64>;
    for (double theta_db : {-10.0, 0.0, 10.0}) {
        const PppMeta meta(db_to_linear(theta_db));
        const double integral = gauss::integrate([&](double x) { return meta(x); }, 0.0, 1.0);
        const double m1 = mb_ppp(1.0, 0.5, db_to_linear(theta_db));
        const double err = std::abs(integral - m1);
        ok &= err <= 1e-3;
        DETAIL << "theta = " << theta_db << " dB: int Fbar dx = " << integral << ", M1 = " << m1
               << " (|err| = " << err << ", tol 1e-3)";
    }
    return ok;
}

bool criterion_5(Ctx& c) {
    const auto& em = c.sim(4);
    double worst = 0.0, worst_theta = 0.0;
    for (std::size_t i = 0; i < c.theta_grid_db.size(); ++i) {
        const double th = c.theta_grid_db[i];
        if (th < -20.0) continue;
        const double diff = std::abs(em.ccdf(i, 0.95) - fbar_ppp(th, 0.95));
        if (diff > worst) {
            worst = diff;
            worst_theta = th;
        }
    }
    DETAIL << "ppp: sup |empirical - analytic| = " << worst << " at " << worst_theta
           << " dB (tol " << kTolMetaPpp << ")";
    return worst <= kTolMetaPpp;
}

bool criterion_6(Ctx& c) {
    bool ok = true;
    // The regular lattice saturates at Fbar = 1 below its critical threshold
    // where no shifted-PPP curve can follow, so its comparison starts higher.
    // Its true gap to the shifted-PPP curve peaks at 0.0442 near theta = -2 dB
    // (deterministic cell integration; the shift is exact only as theta -> 0),
    // so the lattice tolerance covers that plus Monte Carlo noise.
    const struct {
        std::size_t idx;
        double lo, hi, tol;
    } cases[] = {{0, -10.0, 10.0, 0.05}, {2, -20.0, 0.0, kTolMetaShift}};
    for (const auto& cs : cases) {
        const auto& em = c.sim(cs.idx);
        const double g0_db = linear_to_db(misr_ppp(4.0) / em.misr());
        double worst = 0.0, worst_theta = 0.0;
        for (std::size_t i = 0; i < c.theta_grid_db.size(); ++i) {
            const double th = c.theta_grid_db[i];
            if (th < cs.lo - 1e-9 || th > cs.hi + 1e-9) continue;
            const double diff = std::abs(em.ccdf(i, 0.95) - fbar_ppp(th - g0_db, 0.95));
            if (diff > worst) {
                worst = diff;
                worst_theta = th;
            }
        }
        ok &= worst <= cs.tol;
        DETAIL << c.models[cs.idx].name << ": measured G0 = " << g0_db
               << " dB, sup |sim - shifted| = " << worst << " at " << worst_theta << " dB over ["
               << cs.lo << ", " << cs.hi << "] (tol " << cs.tol << ")";
    }

    // Below the lattice's critical threshold every user meets x = 0.95, so the
    // empirical ccdf must equal 1 exactly.
    const auto& tl = c.sim(0);
    const double theta_c = c.theta_c_db();
    bool collapse = true;
    for (std::size_t i = 0; i < c.theta_grid_db.size(); ++i)
        if (c.theta_grid_db[i] < theta_c - 0.25) collapse &= tl.ccdf(i, 0.95) == 1.0;
    ok &= collapse;
    DETAIL << "triangular-lattice: ccdf == 1 for all grid thetas below theta_c = " << theta_c
           << " dB: " << (collapse ? "yes" : "NO");
    return ok;
}

bool criterion_7(Ctx& c) {
    const double got = c.theta_c_db();
    const double err = std::abs(got - kThetaCriticalRefDb);
    // The threshold depends only on theta, not on the lattice constant.
    const double other = critical_theta(TriangularLattice{eta_for_density(0.1)}, 4.0, 0.95)
                             .theta_c_db;
    DETAIL << "theta_c(x = 0.95) = " << got << " dB (reference " << kThetaCriticalRefDb
           << ", |err| = " << err << ", tol " << kTolThetaCDb << ")";
    DETAIL << "scale invariance: |theta_c(eta = 1) - theta_c(eta = " << eta_for_density(0.1)
           << ")| = " << std::abs(got - other);
    return err <= kTolThetaCDb && std::abs(got - other) <= 2e-3;
}

bool criterion_8(Ctx& c) {
    bool ok = true;
    const TierSpec ppp = make_tier(ProcessKind{Poisson{}}, 0.1, 1.0, 4.0, 1.0);
    for (std::size_t idx = 0; idx < 4; ++idx) {
        const TierSpec t = make_tier(c.models[idx].kind, std::nullopt, 1.0, 4.0,
                                     db_to_linear(c.models[idx].ref_g0_db));
        const double got = effective_gain({t, ppp}).value_db;
        const double err = std::abs(got - kGeffTwoTierRefDb[idx]);
        ok &= err <= kTolGeff2Db;
        DETAIL << c.models[idx].name << "/ppp: G_eff = " << got << " dB (reference "
               << kGeffTwoTierRefDb[idx] << ", |err| = " << err << ")";
    }
    const TierSpec gp = make_tier(c.models[2].kind, std::nullopt, 1.0, 4.0,
                                  db_to_linear(c.models[2].ref_g0_db));
    const TierSpec mcp = make_tier(c.models[3].kind, std::nullopt, 1.0, 4.0,
                                   db_to_linear(c.models[3].ref_g0_db));
    const double got3 = effective_gain({gp, mcp, ppp}).value_db;
    const double err3 = std::abs(got3 - kGeffThreeTierRefDb);
    ok &= err3 <= kTolGeff3Db;
    DETAIL << "gauss-poisson/matern-cluster/ppp: G_eff = " << got3 << " dB (reference "
           << kGeffThreeTierRefDb << ", |err| = " << err3 << ")";
    return ok;
}

bool criterion_9(Ctx&) {
    bool ok = true;
    const double eta = eta_for_density(0.1);

    // (a) With every gain at 1 the approximation must collapse to the HIP
    // moment 1/F regardless of densities and powers.
    HcnSpec hip;
    hip.tiers = {make_tier(ProcessKind{Poisson{}}, 0.1, 1.0, 4.0, 1.0),
                 make_tier(ProcessKind{Poisson{}}, 0.03, 5.0, 4.0, 1.0),
                 make_tier(ProcessKind{Poisson{}}, 0.2, 0.4, 4.0, 1.0)};
    double worst_a = 0.0;
    for (double theta : {0.1, 1.0, 10.0})
        for (cd b : {cd(1.0, 0.0), cd(2.0, 0.0), cd(0.5, 7.0)}) {
            const cd hat = mb_hcn_hat(hip, b, theta);
            const cd hipm = mb_ppp(b, 0.5, theta);
            worst_a = std::max(worst_a, std::abs(hat - hipm) / std::abs(hipm));
        }
    ok &= worst_a <= 1e-8;
    DETAIL << "all-gains-one collapse to 1/F: max rel err = " << worst_a << " (tol 1e-8)";

    // (b) Equal path loss exponents: quadrature route vs the closed form.
    HcnSpec two;
    two.tiers = {make_tier(ProcessKind{TriangularLattice{eta}}, std::nullopt, 1.0, 4.0,
                           db_to_linear(3.6099)),
                 make_tier(ProcessKind{Poisson{}}, 0.05, 2.5, 4.0, 1.0)};
    double worst_b = 0.0;
    for (double theta : {0.05, 0.5, 2.0, 20.0})
        for (cd b : {cd(1.0, 0.0), cd(2.0, 0.0), cd(0.0, 7.5)}) {
            const cd hat = mb_hcn_hat(two, b, theta);
            const cd closed = mb_hcn_equal_alpha(two, b, theta);
            worst_b = std::max(worst_b, std::abs(hat - closed) / std::abs(closed));
        }
    ok &= worst_b <= 1e-8;
    DETAIL << "equal-alpha closed form vs quadrature: max rel err = " << worst_b
           << " (tol 1e-8)";

    // (c) A single tier with gain G equals the PPP moment at theta / G.
    HcnSpec one;
    one.tiers = {make_tier(ProcessKind{TriangularLattice{eta}}, std::nullopt, 1.0, 4.0,
                           db_to_linear(3.6099))};
    double worst_c = 0.0;
    for (double theta : {0.1, 1.0, 10.0}) {
        const cd hat = mb_hcn_hat(one, cd(2.0, 0.0), theta);
        const cd ppp = mb_ppp(cd(2.0, 0.0), 0.5, theta / db_to_linear(3.6099));
        worst_c = std::max(worst_c, std::abs(hat - ppp) / std::abs(ppp));
    }
    ok &= worst_c <= 1e-8;
    DETAIL << "single tier reduces to shifted PPP: max rel err = " << worst_c << " (tol 1e-8)";
    return ok;
}

bool criterion_10(Ctx&) {
    bool ok = true;
    const double eta = eta_for_density(0.1);
    HcnSpec two;
    two.tiers = {make_tier(ProcessKind{TriangularLattice{eta}}, std::nullopt, 1.0, 4.0,
                           db_to_linear(3.6099)),
                 make_tier(ProcessKind{Poisson{}}, 0.1, 1.0, 4.0, 1.0)};
    const double geff = effective_gain(two.tiers).value_linear;

    double worst_gap = -HUGE_VAL;
    for (double b : {0.5, 1.0, 2.0, 3.0})
        for (double th_db = -20.0; th_db <= 10.0 + 1e-9; th_db += 2.0) {
            const double theta = db_to_linear(th_db);
            const double hat = mb_hcn_hat(two, b, theta);
            const double bound = mb_ppp(b, 0.5, theta / geff);
            worst_gap = std::max(worst_gap, hat - bound);
            ok &= hat <= bound + 1e-10;
        }
    DETAIL << "b > 0: max(hat - bound) = " << worst_gap << " (must stay <= 1e-10)";

    // b = -1: the inequality reverses.  M_{-1} exists only while
    // F(-1, delta, theta) > 0, i.e. theta < 1 at alpha = 4, restricting the
    // range for the PPP tier; stay at -1 dB and below.
    double worst_gap_neg = -HUGE_VAL;
    for (double th_db = -20.0; th_db <= -1.0 + 1e-9; th_db += 1.0) {
        const double theta = db_to_linear(th_db);
        const double hat = mb_hcn_hat(two, -1.0, theta);
        const double bound = mb_ppp(-1.0, 0.5, theta / geff);
        worst_gap_neg = std::max(worst_gap_neg, bound - hat);
        ok &= hat >= bound - 1e-10;
    }
    DETAIL << "b = -1: max(bound - hat) = " << worst_gap_neg << " (must stay <= 1e-10)";
    return ok;
}

bool criterion_11(Ctx& c) {
    bool ok = true;
    // theta = 1e-3 sits at the -30 dB grid point of the shared simulations.
    const double theta = 1e-3;
    std::size_t idx30 = 0;
    for (std::size_t i = 0; i < c.theta_grid_db.size(); ++i)
        if (std::abs(c.theta_grid_db[i] + 30.0) < 1e-9) idx30 = i;
    for (std::size_t idx = 0; idx < 4; ++idx) {
        const auto& em = c.sim(idx);
        // MISR from the large-window gain runs; the moments come from the
        // meta-simulation realizations, so the comparison is cross-window.
        const double misr_hat = misr_ppp(4.0) / c.g0(idx).value_linear;
        for (double b : {1.0, 2.0}) {
            const double lhs = 1.0 - em.moment(idx30, b);
            const double rhs = b * theta * misr_hat;
            const double rel = std::abs(lhs - rhs) / rhs;
            ok &= rel <= kTolLowTheta;
            DETAIL << c.models[idx].name << ", b = " << b << ": 1 - M_b = " << lhs
                   << ", b theta MISR = " << rhs << " (rel err = " << rel << ", tol "
                   << kTolLowTheta << ")";
        }
    }
    return ok;
}

struct Criterion {
    int id;
    const char* title;
    bool (*fn)(Ctx&);
};

const Criterion kCriteria[] = {
    {1, "single-tier asymptotic gains (alpha = 4)", criterion_1},
    {2, "gauss-poisson asymptotic gain across alpha", criterion_2},
    {3, "Poisson moment closed forms and series cross-check", criterion_3},
    {4, "meta ccdf integrates to the mean success probability", criterion_4},
    {5, "Poisson empirical meta matches the analytic inversion", criterion_5},
    {6, "gain-shifted Poisson curve approximates the non-Poisson models", criterion_6},
    {7, "lattice critical threshold", criterion_7},
    {8, "effective gains from the per-tier reference gains", criterion_8},
    {9, "multi-tier analytic moment reductions", criterion_9},
    {10, "effective-gain bound on the analytic moments", criterion_10},
    {11, "low-threshold moment asymptotics", criterion_11},
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance checks"};
    std::vector<int> selected;
    Ctx ctx;
    app.add_option("--criterion", selected, "run only these criteria (default: all)");
    app.add_option("--n", ctx.n, "realizations per simulation");
    app.add_option("--seed", ctx.seed, "master seed");
    app.add_option("--window", ctx.half_extent, "meta-simulation window half extent");
    app.add_option("--g0-window", ctx.g0_window, "gain-run window half extent (criterion 1)");
    app.add_option("--sweep-window", ctx.sweep_window,
                   "alpha-sweep window half extent (criterion 2)");
    CLI11_PARSE(app, argc, argv);

    int failures = 0;
    for (const auto& crit : kCriteria) {
        if (!selected.empty() &&
            std::find(selected.begin(), selected.end(), crit.id) == selected.end())
            continue;
        std::cout << "criterion " << crit.id << ": " << crit.title << std::endl;
        const auto start = std::chrono::steady_clock::now();
        bool pass = false;
        std::string error;
        try {
            pass = crit.fn(ctx);
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!error.empty()) std::cout << "    error: " << error << std::endl;
        std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << crit.id << ": " << crit.title
                  << " (" << secs << " s)" << std::endl;
        if (!pass) ++failures;
    }
    if (failures == 0)
        std::cout << "all criteria passed" << std::endl;
    else
        std::cout << failures << " criterion(s) failed" << std::endl;
    return failures;
}
