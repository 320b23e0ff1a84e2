#pragma once

// Time integration. The species equation is advanced explicitly (Heun)
// under a combined diffusive/advective/reaction step-size limit; the
// chemical equation is advanced semi-implicitly for tau = 1,
//
//   (I + dt b - dt d2 lap_h) v_new = v + dt (a u^m + f),
//
// or replaced by the elliptic balance (b I - d2 lap_h) v = a u^m + f for
// tau = 0. Cells pushed below zero by the explicit update are clamped to
// zero and counted; in the parameter regimes the gates certify, the count
// stays at zero.

#include <cstdint>
#include <stdexcept>
#include <string>

#include "toxitaxis/grid.hpp"
#include "toxitaxis/linear_solver.hpp"
#include "toxitaxis/model.hpp"
#include "toxitaxis/operators.hpp"

namespace toxitaxis {

struct State {
    Field u;
    Field v;
    double t = 0.0;
};

// Throws when a field is negative or non-finite.
void validate(const State& state);

struct StepControl {
    double dt_init = 1e-3;
    double dt_min = 1e-12;
    double dt_max = 1e-2;
    double cfl_safety = 0.85;
    double t_end = 1.0;

    friend bool operator==(const StepControl&, const StepControl&) = default;
};

void validate(const StepControl& control);

class DivergenceError : public std::runtime_error {
  public:
    DivergenceError(const std::string& msg, double t, double dt, double max_u)
        : std::runtime_error(msg), t_(t), dt_(dt), max_u_(max_u) {}
    double t() const { return t_; }
    double dt() const { return dt_; }
    double max_u() const { return max_u_; }

  private:
    double t_, dt_, max_u_;
};

struct StepStats {
    double dt = 0.0;
    double max_u = 0.0;
    double max_v = 0.0;
    long clamped_cells = 0;
    int cg_iterations = 0;
};

// Species reaction + transport right-hand side; v is held fixed.
Field rhs_u(const State& state, const ModelParams& params);

// Chemical right-hand side for tau = 1: d2 lap(v) + a u^m - b v + f(x,t).
Field rhs_v(const State& state, const ModelParams& params, double t);

// Elliptic chemical balance for tau = 0, solved by preconditioned
// conjugate gradients to the requested relative residual (default 1e-10).
// Throws LinearSolverError if the iteration cap is hit first.
Field solve_elliptic_v(const Field& u, const ModelParams& params, double t,
                       double rel_tol = 1e-10);

class TimeStepper {
  public:
    TimeStepper(const Grid& grid, const ModelParams& params, const StepControl& control);

    // Advances the state by one adaptive step, clipped so that t never
    // exceeds control.t_end and, when event > t, never exceeds event.
    // Throws DivergenceError when the limiter pushes dt below dt_min.
    StepStats step(State& state, double event = 0.0);

    long clamp_count() const { return clamp_count_; }
    const ModelParams& params() const { return params_; }
    const StepControl& control() const { return control_; }

    // Largest admissible dt at the given state (before event clipping).
    double stable_dt(const State& state) const;

    // One semi-implicit chemical update with u frozen; exposed for the
    // stiff-stability checks. Returns CG iterations.
    int advance_v(Field& v, const Field& u, double t_new, double dt);

  private:
    void reaction_into(const Field& u, const Field& v, Field& out) const;
    void u_powers_into(const Field& u, Field& out) const;
    void add_source(Field& rhs, double t, double weight) const;

    Grid grid_;
    ModelParams params_;
    StepControl control_;
    PowerLaw pow_alpha_, pow_beta_, pow_kappa_m1_, pow_m_;
    Field source_profile_;
    ScreenedPoissonSolver chem_solver_;
    Field k1_, k2_, u_stage_, d_scratch_, s_scratch_, chem_rhs_, u_m_;
    bool first_step_ = true;
    long clamp_count_ = 0;
};

}  // namespace toxitaxis
