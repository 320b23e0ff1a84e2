#pragma once

// Parameter sweeps: a 1- or 2-axis grid of model variants, each simulated
// independently and classified into a phase-diagram outcome. Points run on
// a small worker pool; the result table is always in axis-major order and
// bit-identical for a given spec and seed, whatever the pool size.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "toxitaxis/simulate.hpp"

namespace toxitaxis {

struct SweepAxis {
    std::string param;  // d1 d2 chi r mu a b m kappa alpha beta fbar
    double lo = 0.0;
    double hi = 0.0;
    int count = 0;
};

struct SweepSpec {
    std::vector<SweepAxis> axes;  // 1 or 2 entries
    ModelParams model;            // fixed values; axes override per point
    Grid grid;
    StepControl control;
    InitialData initial;
    SamplingSpec sampling;
    double convergence_threshold = 1e-3;
    std::uint64_t seed = 0;
    int max_points = 400;
};

enum class Outcome {
    converged_coexistence,
    converged_extinction,
    no_convergence,
    growth_indicator,
    solver_failure,
};

const char* outcome_name(Outcome outcome);

struct PhasePoint {
    std::array<double, 2> coords{0.0, 0.0};
    int n_coords = 1;
    bool gate_pass = false;
    Outcome outcome = Outcome::solver_failure;
    double fitted_rate = 0.0;     // NaN when no fit was possible
    double final_dist_inf = 0.0;  // NaN for solver failures
};

void validate(const SweepSpec& spec);
void apply_sweep_param(ModelParams& params, const std::string& name, double value);

Outcome classify_outcome(const RunReport& report, double convergence_threshold);

std::vector<PhasePoint> run_sweep(const SweepSpec& spec);

}  // namespace toxitaxis
