#pragma once

// Trajectory diagnostics: total mass, sup norms, the two energy
// functionals with their dissipation quantities, distances to the steady
// states, and exponential decay-rate fitting.
//
//   E1 = a int(u - u* - u* ln(u/u*)) + tau (mu/2) int (v - v*)^2
//   E2 = a int(u)                    + tau (mu/2) int (v - vbar)^2
//   f1 = int (u - u*)^2 + int (v - v*)^2
//   f2 = int u^2        + int (v - vbar)^2

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "toxitaxis/model.hpp"
#include "toxitaxis/solver.hpp"

namespace toxitaxis {

double lyapunov_E1(const State& state, const EquilibriumSet& eq, const ModelParams& params);
double lyapunov_E2(const State& state, const ModelParams& params, double v_bar);
double dissipation_f1(const State& state, const EquilibriumSet& eq);
double dissipation_f2(const State& state, double v_bar);

class InsufficientDataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct FitResult {
    double rate = 0.0;      // positive means decay
    double residual = 0.0;  // RMS error of the log-linear fit
    double window_begin = 0.0;
    double window_end = 0.0;
    int samples_used = 0;
};

// Least-squares slope of log(series) over the final half of the usable
// time window. Samples below 100 * machine epsilon (or nonpositive) are
// discarded first; fewer than 8 surviving samples in the window throws
// InsufficientDataError.
FitResult fit_decay_rate(std::span<const double> times, std::span<const double> series);

struct Verdict {
    std::string name;
    bool pass = false;
    double value = 0.0;      // margin, worst ratio, distance, ... per check
    double threshold = 0.0;
    std::string note;
};

struct FitInfo {
    bool available = false;
    double rate = 0.0;
    double residual = 0.0;
    double window_begin = 0.0;
    double window_end = 0.0;
    bool period_averaged = false;
    double period = 0.0;
    std::string error;
};

struct RunReport {
    std::vector<double> times;
    std::vector<double> mass_series;
    std::vector<double> sup_u_series;
    std::vector<double> sup_v_series;
    std::vector<double> grad_v_sup_series;  // discrete gradient sup of v
    std::vector<double> E1_series;
    std::vector<double> E2_series;
    std::vector<double> f1_series;
    std::vector<double> f2_series;
    std::vector<double> dist_inf_series;  // distance to the regime equilibrium

    double mass_bound_M = 0.0;
    EquilibriumSet equilibria;
    bool fbar_approximate = false;
    double final_dist_coexistence = 0.0;  // NaN when no coexistence state
    double final_dist_semi = 0.0;

    long clamp_count = 0;
    bool growth_indicator = false;
    std::string failure;
    double mean_step_dt = 0.0;

    FitInfo fit;
    std::vector<Verdict> verdicts;

    State final_state;
    std::vector<std::pair<double, State>> snapshots;

    bool all_verdicts_pass() const;
};

// Passes when every recorded mass sample stays below M * (1 + 1e-2);
// the verdict value carries the worst sample/M ratio.
Verdict mass_bound_check(const RunReport& report);

// Largest E[k+1] - E[k] over samples with t >= skip_fraction * t_end,
// measured against the slack 10 * dt_step * max|dE/dt| expected from the
// discretization. Positive means a genuine monotonicity violation.
double energy_monotonicity_violation(std::span<const double> times, std::span<const double> energy,
                                     double dt_step, double skip_fraction = 0.05);

}  // namespace toxitaxis
