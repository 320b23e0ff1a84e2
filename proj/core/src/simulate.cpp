#include "toxitaxis/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "toxitaxis/operators.hpp"

namespace toxitaxis {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double sample_interval(const SimulationSetup& s) {
    return s.sampling.interval > 0.0 ? s.sampling.interval : s.control.t_end / 400.0;
}

}  // namespace

void validate(const SimulationSetup& s) {
    validate(s.model);
    validate(s.grid);
    validate(s.control);
    const InitialData& init = s.initial;
    if (!(init.u_level >= 0.0) || !std::isfinite(init.u_level)) {
        throw std::invalid_argument("initial.u0 must be finite and nonnegative");
    }
    if (!(init.perturb_amplitude >= 0.0) || init.perturb_amplitude > init.u_level) {
        throw std::invalid_argument(
            "initial.perturb_amplitude must lie in [0, u0] to keep u0 nonnegative");
    }
    if (s.model.tau == 1) {
        if (!init.v_level.has_value()) {
            throw std::invalid_argument("initial.v0 is required when tau = 1");
        }
        if (!(*init.v_level >= 0.0) || init.perturb_amplitude > *init.v_level) {
            throw std::invalid_argument(
                "initial.v0 must be nonnegative and >= the perturbation amplitude");
        }
    } else if (init.v_level.has_value()) {
        throw std::invalid_argument(
            "initial.v0 is not used when tau = 0 (the chemical starts from the elliptic balance)");
    }
    if (!(s.convergence_threshold > 0.0)) {
        throw std::invalid_argument("convergence threshold must be positive");
    }
    if (s.sampling.snapshots < 0) throw std::invalid_argument("snapshots must be >= 0");
}

Field perturbation_profile(const Grid& grid, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Field g(grid);
    if (grid.dim == 1) {
        double c[3];
        for (double& w : c) w = unit(rng);
        for (int i = 0; i < grid.cells[0]; ++i) {
            const double x = grid.center(0, i) / grid.extents[0];
            g[i] = c[0] * std::cos(M_PI * x) + c[1] * std::cos(2.0 * M_PI * x) +
                   c[2] * std::cos(3.0 * M_PI * x);
        }
    } else {
        // All (k,l) cosine modes with k,l <= 2 except the constant one.
        double c[8];
        for (double& w : c) w = unit(rng);
        for (int j = 0; j < grid.cells[1]; ++j) {
            const double y = grid.center(1, j) / grid.extents[1];
            for (int i = 0; i < grid.cells[0]; ++i) {
                const double x = grid.center(0, i) / grid.extents[0];
                int idx = 0;
                double sum = 0.0;
                for (int k = 0; k <= 2; ++k) {
                    for (int l = 0; l <= 2; ++l) {
                        if (k == 0 && l == 0) continue;
                        sum += c[idx % 8] * std::cos(k * M_PI * x) * std::cos(l * M_PI * y);
                        ++idx;
                    }
                }
                g.at(i, j) = sum;
            }
        }
    }
    const double m = std::max(std::abs(max_value(g)), std::abs(min_value(g)));
    if (m > 0.0) {
        for (double& v : g.values) v /= m;
    }
    return g;
}

State make_initial_state(const SimulationSetup& s) {
    State state;
    state.t = 0.0;
    state.u = Field(s.grid, s.initial.u_level);
    if (s.initial.perturb_amplitude > 0.0) {
        const Field gu = perturbation_profile(s.grid, s.initial.seed);
        for (std::size_t c = 0; c < state.u.values.size(); ++c) {
            state.u.values[c] = std::max(0.0, state.u.values[c] +
                                                  s.initial.perturb_amplitude * gu.values[c]);
        }
    }
    if (s.model.tau == 1) {
        state.v = Field(s.grid, *s.initial.v_level);
        if (s.initial.perturb_amplitude > 0.0) {
            const Field gv = perturbation_profile(s.grid, s.initial.seed ^ 0x9e3779b97f4a7c15ULL);
            for (std::size_t c = 0; c < state.v.values.size(); ++c) {
                state.v.values[c] = std::max(0.0, state.v.values[c] +
                                                      s.initial.perturb_amplitude * gv.values[c]);
            }
        }
    } else {
        state.v = solve_elliptic_v(state.u, s.model, 0.0);
    }
    validate(state);
    return state;
}

double mean_source_value(const SourceSpec& source, const Grid& grid) {
    if (source.kind == SourceSpec::Kind::constant) return source.amplitude;
    Field profile(grid);
    for (int j = 0; j < grid.cells[1]; ++j) {
        const double y = grid.dim == 2 ? grid.center(1, j) : 0.0;
        for (int i = 0; i < grid.cells[0]; ++i) {
            profile.at(i, j) = source.spatial(grid.center(0, i), y);
        }
    }
    return integrate(profile) / grid.measure() * source.mean_time_factor();
}

namespace {

struct Targets {
    double u_e = 0.0;
    double v_e = 0.0;
};

Targets regime_target(const EquilibriumSet& eq) {
    if (eq.has_coexistence) return {eq.u_star, eq.v_star};
    return {eq.u_bar, eq.v_bar};
}

// Oscillation period of the linearized uniform-mode dynamics around the
// coexistence state, or 0 when the approach is non-oscillatory. Used to
// average the distance series before rate fitting: a spiral approach
// makes the raw log-distance wiggle by far more than the fit residual
// budget even though the envelope decays cleanly.
double spiral_period(const ModelParams& p, const EquilibriumSet& eq) {
    if (p.tau != 1 || !eq.has_coexistence) return 0.0;
    const double u = eq.u_star;
    const double a11 = p.r * (1.0 - p.kappa * std::pow(u, p.kappa - 1.0)) - p.mu * eq.v_star;
    const double a12 = -p.mu * u;
    const double a21 = p.a * p.m * std::pow(u, p.m - 1.0);
    const double a22 = -p.b;
    const double disc = (a11 - a22) * (a11 - a22) + 4.0 * a12 * a21;
    if (disc >= 0.0) return 0.0;
    return 4.0 * M_PI / std::sqrt(-disc);
}

void fit_distance_rate(RunReport& report, double period) {
    FitInfo& info = report.fit;
    info.period = period;
    std::vector<double> ft = report.times;
    std::vector<double> fd = report.dist_inf_series;

    // Drop the trailing quantization plateau: an explicit update cannot
    // move a cell by less than half an ulp per step, so the distance
    // freezes near ulp(u*)/dt no matter how fast the dynamics contract.
    // Only series that actually decayed by orders of magnitude are cut.
    double floor_level = std::numeric_limits<double>::infinity();
    double peak = 0.0;
    for (double v : fd) {
        if (v > 0.0) floor_level = std::min(floor_level, v);
        peak = std::max(peak, v);
    }
    if (std::isfinite(floor_level) && peak > 1e3 * floor_level) {
        std::size_t end = fd.size();
        for (std::size_t i = 0; i < fd.size(); ++i) {
            if (fd[i] <= 4.0 * floor_level) {
                end = i + 1;
                break;
            }
        }
        ft.resize(end);
        fd.resize(end);
    }
    const std::vector<double> t = ft;
    const std::vector<double> d = fd;
    if (period > 0.0 && t.size() >= 3) {
        const double spacing = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
        if (spacing < period / 3.0) {
            // Geometric mean over one period strips the spiral wiggle.
            ft.clear();
            fd.clear();
            std::size_t lo = 0, hi = 0;
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (t[i] - t.front() < 0.5 * period || t.back() - t[i] < 0.5 * period) continue;
                while (t[lo] < t[i] - 0.5 * period) ++lo;
                while (hi + 1 < t.size() && t[hi + 1] <= t[i] + 0.5 * period) ++hi;
                long double acc = 0.0L;
                int n = 0;
                bool ok = true;
                for (std::size_t j = lo; j <= hi; ++j) {
                    if (!(d[j] > 0.0)) {
                        ok = false;
                        break;
                    }
                    acc += std::log(d[j]);
                    ++n;
                }
                if (ok && n >= 3) {
                    ft.push_back(t[i]);
                    fd.push_back(std::exp(static_cast<double>(acc / n)));
                }
            }
            info.period_averaged = true;
        }
    }
    try {
        const FitResult fit = fit_decay_rate(ft, fd);
        info.available = true;
        info.rate = fit.rate;
        info.residual = fit.residual;
        info.window_begin = fit.window_begin;
        info.window_end = fit.window_end;
    } catch (const InsufficientDataError& err) {
        info.available = false;
        info.error = err.what();
    }
}

}  // namespace

RunReport simulate(const SimulationSetup& setup) {
    validate(setup);
    RunReport report;

    const double fbar = mean_source_value(setup.model.source, setup.grid);
    report.fbar_approximate = !setup.model.source.is_constant();
    if (std::abs(setup.model.m - 1.0) <= 1e-12) {
        report.equilibria = equilibria(setup.model, fbar);
    } else {
        // Outside the m = 1 analysis only the species-free balance is
        // available; classification falls back to it.
        report.equilibria.has_coexistence = false;
        report.equilibria.fbar = fbar;
        report.equilibria.u_bar = 0.0;
        report.equilibria.v_bar = fbar / setup.model.b;
    }
    const EquilibriumSet& eq = report.equilibria;
    const Targets target = regime_target(eq);

    State state = make_initial_state(setup);
    TimeStepper stepper(setup.grid, setup.model, setup.control);

    const double interval = sample_interval(setup);
    const double t_end = setup.control.t_end;
    const double t_eps = 1e-9 * std::max(interval, 1.0);

    std::vector<double> snapshot_times;
    if (setup.sampling.snapshots == 1) {
        snapshot_times.push_back(t_end);
    } else if (setup.sampling.snapshots > 1) {
        for (int k = 0; k < setup.sampling.snapshots; ++k) {
            snapshot_times.push_back(t_end * k / (setup.sampling.snapshots - 1));
        }
    }
    std::size_t next_snapshot = 0;

    const auto record = [&](const State& st) {
        report.times.push_back(st.t);
        report.mass_series.push_back(integrate(st.u));
        report.sup_u_series.push_back(max_value(st.u));
        report.sup_v_series.push_back(max_value(st.v));
        report.grad_v_sup_series.push_back(gradient_sup(st.v));
        if (eq.has_coexistence) {
            report.E1_series.push_back(lyapunov_E1(st, eq, setup.model));
            report.f1_series.push_back(dissipation_f1(st, eq));
        } else {
            report.E1_series.push_back(kNaN);
            report.f1_series.push_back(kNaN);
        }
        report.E2_series.push_back(lyapunov_E2(st, setup.model, eq.v_bar));
        report.f2_series.push_back(dissipation_f2(st, eq.v_bar));
        report.dist_inf_series.push_back(sup_distance(st.u, target.u_e) +
                                         sup_distance(st.v, target.v_e));
    };

    record(state);
    if (next_snapshot < snapshot_times.size() && snapshot_times[next_snapshot] <= t_eps) {
        report.snapshots.emplace_back(state.t, state);
        ++next_snapshot;
    }

    double next_sample = interval;
    double mean_dt = 0.0;
    long n_steps = 0;
    while (state.t < t_end - t_eps) {
        double event = std::min(next_sample, t_end);
        if (next_snapshot < snapshot_times.size()) {
            event = std::min(event, snapshot_times[next_snapshot]);
        }
        try {
            const StepStats stats = stepper.step(state, event);
            mean_dt += stats.dt;
            ++n_steps;
            if (stats.max_u > kGrowthThreshold) {
                report.growth_indicator = true;
                report.failure = "field magnitude exceeded the growth threshold";
            }
        } catch (const DivergenceError& err) {
            report.growth_indicator = true;
            report.failure = err.what();
        } catch (const LinearSolverError& err) {
            report.failure = err.what();
        }
        if (!report.failure.empty()) {
            record(state);
            break;
        }
        if (state.t >= next_sample - t_eps) {
            record(state);
            while (next_sample <= state.t + t_eps) next_sample += interval;
        }
        if (next_snapshot < snapshot_times.size() &&
            state.t >= snapshot_times[next_snapshot] - t_eps) {
            report.snapshots.emplace_back(state.t, state);
            ++next_snapshot;
        }
    }
    if (report.failure.empty() && (report.times.empty() || report.times.back() < state.t - t_eps)) {
        record(state);
    }
    if (n_steps > 0) mean_dt /= static_cast<double>(n_steps);
    report.mean_step_dt = mean_dt;

    report.clamp_count = stepper.clamp_count();
    report.mass_bound_M = std::max(report.mass_series.front(), setup.grid.measure());
    report.final_state = state;
    report.final_dist_semi = sup_distance(state.u, eq.u_bar) + sup_distance(state.v, eq.v_bar);
    report.final_dist_coexistence =
        eq.has_coexistence
            ? sup_distance(state.u, eq.u_star) + sup_distance(state.v, eq.v_star)
            : kNaN;

    fit_distance_rate(report, spiral_period(setup.model, eq));

    for (const std::string& check : setup.checks) {
        if (check == "existence-gate") {
            const GateReport gate = check_existence_gate(setup.model, setup.grid.dim);
            report.verdicts.push_back({gate.name, gate.pass, gate.margin, 0.0, gate.detail});
        } else if (check == "stability-gate") {
            if (eq.has_coexistence && std::abs(setup.model.m - 1.0) <= 1e-12 &&
                setup.model.kappa >= 2.0) {
                const GateReport gate = check_stability_gate(setup.model, eq);
                report.verdicts.push_back({gate.name, gate.pass, gate.margin, 0.0, gate.detail});
            } else {
                report.verdicts.push_back(
                    {"stability-gate", false, 0.0, 0.0, "not applicable in this regime"});
            }
        } else if (check == "mass-bound") {
            report.verdicts.push_back(mass_bound_check(report));
        } else if (check == "positivity") {
            Verdict v{"positivity", report.clamp_count == 0,
                      static_cast<double>(report.clamp_count), 0.0, ""};
            report.verdicts.push_back(v);
        } else if (check == "convergence") {
            const double final_dist = report.dist_inf_series.back();
            Verdict v{"convergence", final_dist <= setup.convergence_threshold, final_dist,
                      setup.convergence_threshold, std::string("against ") + eq.regime()};
            report.verdicts.push_back(v);
        } else {
            throw std::invalid_argument("unknown check '" + check + "'");
        }
    }
    if (report.fbar_approximate) {
        report.verdicts.push_back({"fbar-approximation", true, eq.fbar, 0.0,
                                   "non-constant source; equilibria use its mean value"});
    }
    return report;
}

}  // namespace toxitaxis
