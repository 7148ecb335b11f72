#include "sirmeta/config.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "sirmeta/common.hpp"

namespace sirmeta {

namespace {

using nlohmann::json;

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
    throw std::invalid_argument("config: field '" + field + "': " + why);
}

double require_number(const json& j, const std::string& field) {
    if (!j.contains(field) || !j[field].is_number()) bad_field(field, "number required");
    return j[field].get<double>();
}

std::vector<double> parse_grid(const json& j, const std::string& field, const char* start_key,
                               const char* stop_key, const char* step_key) {
    const json& g = j[field];
    if (g.is_array()) return g.get<std::vector<double>>();
    if (!g.is_object()) bad_field(field, "array or {start, stop, step} object required");
    const double start = require_number(g, start_key);
    const double stop = require_number(g, stop_key);
    const double step = require_number(g, step_key);
    if (!(step > 0.0)) bad_field(field, "step must be > 0");
    if (stop < start) bad_field(field, "stop must be >= start");
    std::vector<double> out;
    for (double v = start; v <= stop + 1e-9 * step; v += step) out.push_back(v);
    return out;
}

ProcessKind kind_from_json(const json& t) {
    if (!t.contains("kind") || !t["kind"].is_string()) bad_field("tiers[].kind", "string required");
    const std::string kind = t["kind"].get<std::string>();
    if (kind == "ppp") return Poisson{};
    if (kind == "triangular-lattice" || kind == "perturbed-triangular-lattice") {
        double eta;
        if (t.contains("eta"))
            eta = require_number(t, "eta");
        else if (t.contains("density"))
            eta = eta_for_density(require_number(t, "density"));
        else
            bad_field("tiers[].eta", "lattice tier needs eta or density");
        if (kind == "triangular-lattice") return TriangularLattice{eta};
        return PerturbedTriangularLattice{eta, require_number(t, "r_pert")};
    }
    if (kind == "gauss-poisson")
        return GaussPoisson{require_number(t, "lambda_p"), require_number(t, "p"),
                            require_number(t, "u")};
    if (kind == "matern-cluster")
        return MaternCluster{require_number(t, "lambda_p"), require_number(t, "cbar"),
                             require_number(t, "r_c")};
    bad_field("tiers[].kind", "unknown kind '" + kind + "'");
}

TierSpec tier_from_json(const json& t) {
    const ProcessKind kind = kind_from_json(t);
    double density;
    if (auto d = intrinsic_density(kind)) {
        density = *d;
        if (t.contains("density")) {
            const double given = require_number(t, "density");
            if (std::abs(given - *d) > 1e-9 * *d)
                bad_field("tiers[].density", "contradicts the process parameters");
        }
    } else {
        if (!t.contains("density")) bad_field("tiers[].density", "required for a ppp tier");
        density = require_number(t, "density");
    }
    const double power = t.contains("power") ? require_number(t, "power") : 1.0;
    const double alpha = t.contains("alpha") ? require_number(t, "alpha") : 4.0;
    std::optional<double> gain;
    if (t.contains("gain_db")) gain = db_to_linear(require_number(t, "gain_db"));
    return make_tier(kind, density, power, alpha, gain);
}

json tier_to_json(const TierSpec& t) {
    json j;
    j["kind"] = kind_name(t.kind);
    struct V {
        json& j;
        void operator()(const Poisson&) const {}
        void operator()(const TriangularLattice& k) const { j["eta"] = k.eta; }
        void operator()(const PerturbedTriangularLattice& k) const {
            j["eta"] = k.eta;
            j["r_pert"] = k.r_pert;
        }
        void operator()(const GaussPoisson& k) const {
            j["lambda_p"] = k.lambda_p;
            j["p"] = k.p;
            j["u"] = k.u;
        }
        void operator()(const MaternCluster& k) const {
            j["lambda_p"] = k.lambda_p;
            j["cbar"] = k.cbar;
            j["r_c"] = k.r_c;
        }
    };
    std::visit(V{j}, t.kind);
    j["density"] = t.density;
    j["power"] = t.power;
    j["alpha"] = t.alpha;
    if (t.gain) j["gain_db"] = linear_to_db(*t.gain);
    return j;
}

} // namespace

Mode mode_from_string(const std::string& s) {
    if (s == "g0") return Mode::g0;
    if (s == "gb") return Mode::gb;
    if (s == "moments") return Mode::moments;
    if (s == "meta-analytic") return Mode::meta_analytic;
    if (s == "meta-beta") return Mode::meta_beta;
    if (s == "meta-sim") return Mode::meta_sim;
    if (s == "hcn") return Mode::hcn;
    if (s == "critical-theta") return Mode::critical_theta;
    if (s == "compare") return Mode::compare;
    if (s == "figures") return Mode::figures;
    throw std::invalid_argument("config: unknown mode '" + s + "'");
}

std::string mode_to_string(Mode m) {
    switch (m) {
        case Mode::g0: return "g0";
        case Mode::gb: return "gb";
        case Mode::moments: return "moments";
        case Mode::meta_analytic: return "meta-analytic";
        case Mode::meta_beta: return "meta-beta";
        case Mode::meta_sim: return "meta-sim";
        case Mode::hcn: return "hcn";
        case Mode::critical_theta: return "critical-theta";
        case Mode::compare: return "compare";
        case Mode::figures: return "figures";
    }
    return "?";
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig cfg;
    if (!j.contains("mode") || !j["mode"].is_string()) bad_field("mode", "string required");
    cfg.mode = mode_from_string(j["mode"].get<std::string>());
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("n")) cfg.n = j["n"].get<std::uint64_t>();
    if (j.contains("out")) cfg.out = j["out"].get<std::string>();
    if (j.contains("window")) {
        if (!j["window"].is_object() || !j["window"].contains("half_extent"))
            bad_field("window", "object with half_extent required");
        cfg.window_half_extent = j["window"]["half_extent"].get<double>();
    }
    if (j.contains("tiers")) {
        if (!j["tiers"].is_array()) bad_field("tiers", "array required");
        for (const auto& t : j["tiers"]) cfg.tiers.push_back(tier_from_json(t));
    }
    if (j.contains("theta_grid_db"))
        cfg.theta_db = parse_grid(j, "theta_grid_db", "start_db", "stop_db", "step_db");
    if (j.contains("x_grid")) cfg.x_grid = parse_grid(j, "x_grid", "start", "stop", "step");
    if (j.contains("b_list")) cfg.b_list = j["b_list"].get<std::vector<double>>();
    if (j.contains("x")) cfg.crit_x = j["x"].get<double>();
    return cfg;
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
    json j;
    j["mode"] = mode_to_string(cfg.mode);
    j["seed"] = cfg.seed;
    j["n"] = cfg.n;
    j["out"] = cfg.out;
    j["window"] = json{{"half_extent", cfg.window_half_extent}};
    json tiers = json::array();
    for (const auto& t : cfg.tiers) tiers.push_back(tier_to_json(t));
    j["tiers"] = tiers;
    if (!cfg.theta_db.empty()) j["theta_grid_db"] = cfg.theta_db;
    if (!cfg.x_grid.empty()) j["x_grid"] = cfg.x_grid;
    j["b_list"] = cfg.b_list;
    j["x"] = cfg.crit_x;
    return j;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error("config: '" + path + "' is not valid JSON: " + e.what());
    }
    return config_from_json(j);
}

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.n == 0) bad_field("n", "must be > 0");
    if (!(cfg.window_half_extent > 0.0)) bad_field("window.half_extent", "must be > 0");
    if (cfg.out.empty()) bad_field("out", "must not be empty");
    const bool needs_tiers = cfg.mode != Mode::figures;
    if (needs_tiers && cfg.tiers.empty()) bad_field("tiers", "at least one tier required");
    if (!cfg.tiers.empty()) validate_tiers(cfg.tiers);

    auto require_theta = [&] {
        if (cfg.theta_db.empty()) bad_field("theta_grid_db", "required for this mode");
    };
    auto require_x = [&] {
        if (cfg.x_grid.empty()) bad_field("x_grid", "required for this mode");
        for (double x : cfg.x_grid)
            if (!(x >= 0.0 && x <= 1.0)) bad_field("x_grid", "values must lie in [0, 1]");
    };
    auto require_gains = [&] {
        for (std::size_t k = 0; k < cfg.tiers.size(); ++k)
            if (!cfg.tiers[k].gain)
                bad_field("tiers[" + std::to_string(k) + "].gain_db",
                          "required for analytic modes");
    };
    auto require_single_tier = [&] {
        if (cfg.tiers.size() != 1) bad_field("tiers", "exactly one tier for this mode");
    };

    switch (cfg.mode) {
        case Mode::g0:
            require_single_tier();
            break;
        case Mode::gb:
            require_single_tier();
            require_theta();
            for (double b : cfg.b_list)
                if (b == 0.0) bad_field("b_list", "b = 0 has no matching gain");
            break;
        case Mode::moments:
        case Mode::meta_sim:
            require_theta();
            if (cfg.mode == Mode::meta_sim) require_x();
            break;
        case Mode::meta_analytic:
        case Mode::meta_beta:
            require_theta();
            require_x();
            require_gains();
            break;
        case Mode::hcn:
            require_theta();
            require_gains();
            break;
        case Mode::critical_theta:
            require_single_tier();
            if (!std::holds_alternative<TriangularLattice>(cfg.tiers[0].kind))
                bad_field("tiers[0].kind", "critical-theta needs a triangular-lattice tier");
            if (!(cfg.crit_x > 0.0 && cfg.crit_x < 1.0)) bad_field("x", "must be in (0, 1)");
            break;
        case Mode::compare:
            require_theta();
            require_x();
            require_gains();
            break;
        case Mode::figures:
            break;
    }
}

} // namespace sirmeta
