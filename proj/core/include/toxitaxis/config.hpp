#pragma once

// Run configuration: a strict JSON schema (comments allowed, unknown keys
// rejected, every model parameter explicit) mapping onto SimulationSetup
// plus output options.

#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "toxitaxis/experiments.hpp"
#include "toxitaxis/simulate.hpp"

namespace toxitaxis {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct OutputSpec {
    std::string directory = "out";
    double sample_interval = 0.0;  // <= 0 picks t_end / 400
    int snapshots = 0;
    std::vector<std::string> checks{"existence-gate", "mass-bound", "positivity", "convergence"};
    double convergence_threshold = 1e-3;

    friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

struct RunConfig {
    ModelParams model;
    Grid grid;
    StepControl control;
    InitialData initial;
    OutputSpec output;

    SimulationSetup setup() const;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

RunConfig parse_config(const std::string& path);
RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& config);

SweepSpec parse_sweep_spec(const std::string& path);
SweepSpec sweep_spec_from_json(const nlohmann::json& j);

}  // namespace toxitaxis
