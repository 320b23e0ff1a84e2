#pragma once

// Single-run orchestration: build initial data from constant levels plus a
// seeded smooth zero-mean perturbation, march the stepper to t_end while
// recording diagnostics, then fit the decay rate and evaluate verdicts.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "toxitaxis/diagnostics.hpp"
#include "toxitaxis/grid.hpp"
#include "toxitaxis/model.hpp"
#include "toxitaxis/solver.hpp"

namespace toxitaxis {

struct InitialData {
    double u_level = 1.0;
    // Required for tau = 1; must stay unset for tau = 0, where the
    // chemical starts from the elliptic balance of u0.
    std::optional<double> v_level;
    double perturb_amplitude = 0.0;
    std::uint64_t seed = 0;

    friend bool operator==(const InitialData&, const InitialData&) = default;
};

struct SamplingSpec {
    double interval = 0.0;  // <= 0 picks t_end / 400
    int snapshots = 0;
};

struct SimulationSetup {
    ModelParams model;
    Grid grid;
    StepControl control;
    InitialData initial;
    SamplingSpec sampling;
    double convergence_threshold = 1e-3;
    std::vector<std::string> checks{"existence-gate", "mass-bound", "positivity", "convergence"};
};

// Magnitude at which a run is flagged as a growth indicator; the solver
// cannot certify blow-up, only report that the fields left the bounded
// regime.
inline constexpr double kGrowthThreshold = 1e6;

void validate(const SimulationSetup& setup);

// Smooth zero-mean perturbation profile with sup norm 1, built from the
// first few zero-flux cosine modes with seeded random weights.
Field perturbation_profile(const Grid& grid, std::uint64_t seed);

State make_initial_state(const SimulationSetup& setup);

// Mean source level the equilibria are computed against: spatial mean on
// the grid times the time-average of the modulation.
double mean_source_value(const SourceSpec& source, const Grid& grid);

RunReport simulate(const SimulationSetup& setup);

}  // namespace toxitaxis
