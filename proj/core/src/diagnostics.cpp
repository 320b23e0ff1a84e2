#include "toxitaxis/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "toxitaxis/operators.hpp"

namespace toxitaxis {

double lyapunov_E1(const State& state, const EquilibriumSet& eq, const ModelParams& p) {
    if (!eq.has_coexistence) {
        throw std::invalid_argument("lyapunov_E1 needs the coexistence state");
    }
    const double u_star = eq.u_star;
    const double log_u_star = std::log(u_star);
    long double entropy = 0.0L;
    for (double u : state.u.values) {
        // Floor u so the entropy term stays finite; a floored cell
        // contributes a large positive penalty, consistent with
        // E1 -> infinity as u -> 0.
        const double uf = std::max(u, 1e-300);
        entropy += u - u_star - u_star * (std::log(uf) - log_u_star);
    }
    double e = p.a * static_cast<double>(entropy) * state.u.grid.cell_volume();
    if (p.tau == 1) {
        long double quad = 0.0L;
        for (double v : state.v.values) {
            const double d = v - eq.v_star;
            quad += static_cast<long double>(d) * d;
        }
        e += 0.5 * p.mu * static_cast<double>(quad) * state.v.grid.cell_volume();
    }
    return e;
}

double lyapunov_E2(const State& state, const ModelParams& p, double v_bar) {
    double e = p.a * integrate(state.u);
    if (p.tau == 1) {
        long double quad = 0.0L;
        for (double v : state.v.values) {
            const double d = v - v_bar;
            quad += static_cast<long double>(d) * d;
        }
        e += 0.5 * p.mu * static_cast<double>(quad) * state.v.grid.cell_volume();
    }
    return e;
}

double dissipation_f1(const State& state, const EquilibriumSet& eq) {
    if (!eq.has_coexistence) {
        throw std::invalid_argument("dissipation_f1 needs the coexistence state");
    }
    long double sum = 0.0L;
    for (double u : state.u.values) {
        const double d = u - eq.u_star;
        sum += static_cast<long double>(d) * d;
    }
    for (double v : state.v.values) {
        const double d = v - eq.v_star;
        sum += static_cast<long double>(d) * d;
    }
    return static_cast<double>(sum) * state.u.grid.cell_volume();
}

double dissipation_f2(const State& state, double v_bar) {
    long double sum = 0.0L;
    for (double u : state.u.values) sum += static_cast<long double>(u) * u;
    for (double v : state.v.values) {
        const double d = v - v_bar;
        sum += static_cast<long double>(d) * d;
    }
    return static_cast<double>(sum) * state.u.grid.cell_volume();
}

FitResult fit_decay_rate(std::span<const double> times, std::span<const double> series) {
    if (times.size() != series.size()) {
        throw std::invalid_argument("fit_decay_rate: times/series size mismatch");
    }
    const double floor = 100.0 * std::numeric_limits<double>::epsilon();
    std::vector<double> t_usable, log_usable;
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (series[i] >= floor && std::isfinite(series[i])) {
            t_usable.push_back(times[i]);
            log_usable.push_back(std::log(series[i]));
        }
    }
    if (t_usable.size() < 8) {
        throw InsufficientDataError("fit_decay_rate: fewer than 8 usable samples");
    }
    const double window_begin = 0.5 * (t_usable.front() + t_usable.back());

    double st = 0.0, sl = 0.0, stt = 0.0, stl = 0.0;
    int n = 0;
    for (std::size_t i = 0; i < t_usable.size(); ++i) {
        if (t_usable[i] < window_begin) continue;
        st += t_usable[i];
        sl += log_usable[i];
        stt += t_usable[i] * t_usable[i];
        stl += t_usable[i] * log_usable[i];
        ++n;
    }
    if (n < 8) {
        throw InsufficientDataError("fit_decay_rate: fewer than 8 usable samples in the window");
    }
    const double denom = n * stt - st * st;
    const double slope = (n * stl - st * sl) / denom;
    const double intercept = (sl - slope * st) / n;

    long double rss = 0.0L;
    for (std::size_t i = 0; i < t_usable.size(); ++i) {
        if (t_usable[i] < window_begin) continue;
        const double e = log_usable[i] - (intercept + slope * t_usable[i]);
        rss += static_cast<long double>(e) * e;
    }
    FitResult fit;
    fit.rate = -slope;
    fit.residual = std::sqrt(static_cast<double>(rss) / n);
    fit.window_begin = window_begin;
    fit.window_end = t_usable.back();
    fit.samples_used = n;
    return fit;
}

bool RunReport::all_verdicts_pass() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

Verdict mass_bound_check(const RunReport& report) {
    Verdict v;
    v.name = "mass-bound";
    v.threshold = 1.01;
    double worst = 0.0;
    for (double m : report.mass_series) worst = std::max(worst, m / report.mass_bound_M);
    v.value = worst;
    v.pass = worst <= 1.01;
    return v;
}

double energy_monotonicity_violation(std::span<const double> times, std::span<const double> energy,
                                     double dt_step, double skip_fraction) {
    if (times.size() != energy.size() || times.size() < 3) {
        throw std::invalid_argument("energy_monotonicity_violation: need >= 3 samples");
    }
    double max_rate = 0.0;
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        const double dt = times[i + 1] - times[i];
        if (dt <= 0.0) continue;
        max_rate = std::max(max_rate, std::abs(energy[i + 1] - energy[i]) / dt);
    }
    const double slack = 10.0 * dt_step * max_rate;
    const double t_skip = skip_fraction * times.back();
    double violation = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        if (times[i] < t_skip) continue;
        violation = std::max(violation, (energy[i + 1] - energy[i]) - slack);
    }
    return violation;
}

}  // namespace toxitaxis
