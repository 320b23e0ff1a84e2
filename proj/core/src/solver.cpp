#include "toxitaxis/solver.hpp"

#include <algorithm>
#include <cmath>

namespace toxitaxis {

void validate(const State& state) {
    validate(state.u.grid);
    if (!(state.u.grid == state.v.grid)) {
        throw std::invalid_argument("state: u and v live on different grids");
    }
    if (!all_finite(state.u) || !all_finite(state.v)) {
        throw std::invalid_argument("state: non-finite field values");
    }
    if (min_value(state.u) < 0.0) throw std::invalid_argument("state: u must be nonnegative");
    if (min_value(state.v) < 0.0) throw std::invalid_argument("state: v must be nonnegative");
}

void validate(const StepControl& c) {
    if (!(c.dt_min > 0.0) || !(c.dt_min <= c.dt_init) || !(c.dt_init <= c.dt_max)) {
        throw std::invalid_argument("step control requires 0 < dt_min <= dt_init <= dt_max");
    }
    if (!(c.cfl_safety > 0.0) || !(c.cfl_safety < 1.0)) {
        throw std::invalid_argument("cfl_safety must lie in (0,1)");
    }
    if (!(c.t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
}

namespace {

Field source_field(const Grid& g, const SourceSpec& s) {
    Field profile(g);
    for (int j = 0; j < g.cells[1]; ++j) {
        const double y = g.dim == 2 ? g.center(1, j) : 0.0;
        for (int i = 0; i < g.cells[0]; ++i) {
            profile.at(i, j) = s.spatial(g.center(0, i), y);
        }
    }
    return profile;
}

}  // namespace

Field rhs_u(const State& state, const ModelParams& p) {
    validate(p);
    Field out = div_nonlinear_diffusion(state.u, p.alpha);
    const Field chemo = div_chemotactic_flux(state.u, state.v, p.beta, p.chi);
    const PowerLaw pow_km1(p.kappa - 1.0);
    for (std::size_t c = 0; c < out.values.size(); ++c) {
        const double u = state.u.values[c];
        out.values[c] = p.d1 * out.values[c] + chemo.values[c] +
                        p.r * u * (1.0 - pow_km1(u)) - p.mu * u * state.v.values[c];
    }
    return out;
}

Field rhs_v(const State& state, const ModelParams& p, double t) {
    validate(p);
    if (p.tau != 1) throw std::invalid_argument("rhs_v applies to tau = 1");
    Field out = laplacian_neumann(state.v);
    const Field profile = source_field(state.v.grid, p.source);
    const double tf = p.source.time_factor(t);
    const PowerLaw pow_m(p.m);
    for (std::size_t c = 0; c < out.values.size(); ++c) {
        out.values[c] = p.d2 * out.values[c] + p.a * pow_m(state.u.values[c]) -
                        p.b * state.v.values[c] + tf * profile.values[c];
    }
    return out;
}

Field solve_elliptic_v(const Field& u, const ModelParams& p, double t, double rel_tol) {
    validate(p);
    if (p.tau != 0) throw std::invalid_argument("solve_elliptic_v applies to tau = 0");
    const Grid& g = u.grid;
    Field rhs(g);
    const Field profile = source_field(g, p.source);
    const double tf = p.source.time_factor(t);
    const PowerLaw pow_m(p.m);
    for (std::size_t c = 0; c < rhs.values.size(); ++c) {
        rhs.values[c] = p.a * pow_m(u.values[c]) + tf * profile.values[c];
    }
    ScreenedPoissonSolver solver(g);
    solver.set_coefficients(p.b, p.d2);
    Field v(g);
    solver.solve(rhs, v, rel_tol, 4 * g.cell_count() + 400, /*strict=*/true);
    return v;
}

TimeStepper::TimeStepper(const Grid& grid, const ModelParams& params, const StepControl& control)
    : grid_(grid),
      params_(params),
      control_(control),
      pow_alpha_(params.alpha),
      pow_beta_(params.beta),
      pow_kappa_m1_(params.kappa - 1.0),
      pow_m_(params.m),
      source_profile_(source_field(grid, params.source)),
      chem_solver_(grid),
      k1_(grid),
      k2_(grid),
      u_stage_(grid),
      d_scratch_(grid),
      s_scratch_(grid),
      chem_rhs_(grid),
      u_m_(grid) {
    validate(grid_);
    validate(params_);
    validate(control_);
}

void TimeStepper::reaction_into(const Field& u, const Field& v, Field& out) const {
    const double* uv = u.values.data();
    const double* vv = v.values.data();
    double* ov = out.values.data();
    for (std::size_t c = 0; c < out.values.size(); ++c) {
        ov[c] += params_.r * uv[c] * (1.0 - pow_kappa_m1_(uv[c])) - params_.mu * uv[c] * vv[c];
    }
}

void TimeStepper::u_powers_into(const Field& u, Field& out) const {
    const double* uv = u.values.data();
    double* ov = out.values.data();
    for (std::size_t c = 0; c < out.values.size(); ++c) ov[c] = pow_m_(uv[c]);
}

void TimeStepper::add_source(Field& rhs, double t, double weight) const {
    const double w = weight * params_.source.time_factor(t);
    if (w == 0.0) return;
    const double* pv = source_profile_.values.data();
    double* rv = rhs.values.data();
    for (std::size_t c = 0; c < rhs.values.size(); ++c) rv[c] += w * pv[c];
}

double TimeStepper::stable_dt(const State& state) const {
    const double max_u = max_value(state.u);
    const double max_v = max_value(state.v);
    const double cfl = control_.cfl_safety;

    double inv_h2 = 1.0 / (grid_.h[0] * grid_.h[0]);
    if (grid_.dim == 2) inv_h2 += 1.0 / (grid_.h[1] * grid_.h[1]);
    const double max_diffusivity = pow_alpha_(1.0 + max_u);
    const double dt_diff = cfl / (2.0 * params_.d1 * max_diffusivity * inv_h2);

    // Wave speed of the donor-cell flux: chi * S'(u) * |grad v|, with
    // S'(s) = (1+s)^(beta-1) (1 + s + beta s) evaluated at the largest u.
    double dt_adv = dt_diff;  // inactive unless chemotaxis is on
    if (params_.chi > 0.0) {
        const double sprime = pow_beta_(1.0 + max_u) *
                              (1.0 + max_u + params_.beta * max_u) / (1.0 + max_u);
        double face_rate = gradient_sup(state.v) / grid_.h[0];
        if (grid_.dim == 2) face_rate += gradient_sup(state.v) / grid_.h[1];
        const double denom = params_.chi * sprime * face_rate + 1e-300;
        dt_adv = cfl / denom;
    }

    // Keep the explicit reaction stages well inside their stability region
    // even when the state has wandered outside the bounded regime.
    const double reaction_rate =
        params_.r * params_.kappa * pow_kappa_m1_(std::max(1.0, max_u)) +
        params_.mu * max_v + 1e-300;
    const double dt_react = cfl / reaction_rate;

    return std::min(std::min(dt_diff, dt_adv), std::min(dt_react, control_.dt_max));
}

int TimeStepper::advance_v(Field& v, const Field& u, double t_new, double dt) {
    u_powers_into(u, u_m_);
    int iters = 0;
    if (params_.tau == 1) {
        const double tf = params_.source.time_factor(t_new);
        for (std::size_t c = 0; c < chem_rhs_.values.size(); ++c) {
            chem_rhs_.values[c] = v.values[c] + dt * (params_.a * u_m_.values[c] +
                                                      tf * source_profile_.values[c]);
        }
        chem_solver_.set_coefficients(1.0 + dt * params_.b, dt * params_.d2);
        iters = chem_solver_.solve(chem_rhs_, v, 1e-14, 2 * grid_.cell_count() + 200).iterations;
    } else {
        const double tf = params_.source.time_factor(t_new);
        for (std::size_t c = 0; c < chem_rhs_.values.size(); ++c) {
            chem_rhs_.values[c] = params_.a * u_m_.values[c] + tf * source_profile_.values[c];
        }
        chem_solver_.set_coefficients(params_.b, params_.d2);
        const auto stats =
            chem_solver_.solve(chem_rhs_, v, 1e-13, 2 * grid_.cell_count() + 200);
        if (stats.rel_residual > 1e-10) {
            throw LinearSolverError("elliptic chemical solve stalled above tolerance",
                                    stats.rel_residual);
        }
        iters = stats.iterations;
    }
    // The implicit matrix is an M-matrix with nonnegative right-hand side,
    // so negative cells can only be roundoff.
    for (double& x : v.values) {
        if (x < 0.0) x = 0.0;
    }
    return iters;
}

StepStats TimeStepper::step(State& state, double event) {
    const double dt_stable = stable_dt(state);
    if (!(dt_stable >= control_.dt_min) || !std::isfinite(dt_stable)) {
        throw DivergenceError("time step collapsed below dt_min (growth indicator)", state.t,
                              dt_stable, max_value(state.u));
    }
    double dt = dt_stable;
    if (first_step_) {
        dt = std::min(dt, control_.dt_init);
        first_step_ = false;
    }
    double remaining = control_.t_end - state.t;
    if (event > state.t) remaining = std::min(remaining, event - state.t);
    dt = std::min(dt, remaining);

    StepStats stats;
    stats.dt = dt;

    // Heun predictor/corrector on u with v frozen at the step start.
    div_nonlinear_diffusion_into(state.u, params_.alpha, d_scratch_, k1_);
    div_chemotactic_flux_into(state.u, state.v, params_.beta, params_.chi, s_scratch_, k2_);
    for (std::size_t c = 0; c < k1_.values.size(); ++c) {
        k1_.values[c] = params_.d1 * k1_.values[c] + k2_.values[c];
    }
    reaction_into(state.u, state.v, k1_);

    for (std::size_t c = 0; c < u_stage_.values.size(); ++c) {
        double next = state.u.values[c] + dt * k1_.values[c];
        if (next < 0.0) {
            next = 0.0;
            ++stats.clamped_cells;
        }
        u_stage_.values[c] = next;
    }

    div_nonlinear_diffusion_into(u_stage_, params_.alpha, d_scratch_, k2_);
    {
        Field& chemo = chem_rhs_;  // reuse as scratch before the v solve
        div_chemotactic_flux_into(u_stage_, state.v, params_.beta, params_.chi, s_scratch_, chemo);
        for (std::size_t c = 0; c < k2_.values.size(); ++c) {
            k2_.values[c] = params_.d1 * k2_.values[c] + chemo.values[c];
        }
    }
    reaction_into(u_stage_, state.v, k2_);

    for (std::size_t c = 0; c < state.u.values.size(); ++c) {
        double next = state.u.values[c] + 0.5 * dt * (k1_.values[c] + k2_.values[c]);
        if (next < 0.0) {
            next = 0.0;
            ++stats.clamped_cells;
        }
        state.u.values[c] = next;
        stats.max_u = std::max(stats.max_u, next);
    }
    clamp_count_ += stats.clamped_cells;

    stats.cg_iterations = advance_v(state.v, state.u, state.t + dt, dt);
    stats.max_v = max_value(state.v);

    if (!std::isfinite(stats.max_u) || !std::isfinite(stats.max_v)) {
        throw DivergenceError("non-finite field values (growth indicator)", state.t, dt,
                              stats.max_u);
    }

    state.t += dt;
    return stats;
}

}  // namespace toxitaxis
