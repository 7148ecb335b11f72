#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sirmeta/process.hpp"

namespace sirmeta {

enum class Mode {
    g0,
    gb,
    moments,
    meta_analytic,
    meta_beta,
    meta_sim,
    hcn,
    critical_theta,
    compare,
    figures,
};

Mode mode_from_string(const std::string& s);
std::string mode_to_string(Mode m);

struct ExperimentConfig {
    Mode mode = Mode::meta_sim;
    std::uint64_t seed = 12345;
    std::uint64_t n = 500000;
    std::string out = "out.csv"; // figures mode: output directory
    double window_half_extent = 500.0;
    std::vector<TierSpec> tiers;
    std::vector<double> theta_db;     // canonical grid (explicit list in JSON or start/stop/step)
    std::vector<double> x_grid;
    std::vector<double> b_list{1.0};
    double crit_x = 0.95;             // critical-theta mode

    bool operator==(const ExperimentConfig&) const = default;
};

// JSON layout: tiers as flat objects ({"kind": "gauss-poisson", "lambda_p":
// ..., "p": ..., "u": ..., "power": 1, "alpha": 4, "gain_db": ...}); non-
// Poisson tiers may omit "density" (derived from the parameters, checked for
// consistency when given); grids either explicit arrays or
// {"start_db"/"start", "stop_db"/"stop", "step_db"/"step"} objects.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

ExperimentConfig load_config(const std::string& path);

// Mode-aware validation; throws std::invalid_argument naming the offending
// field.
void validate_config(const ExperimentConfig& cfg);

} // namespace sirmeta
