#include "toxitaxis/experiments.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace toxitaxis {

const char* outcome_name(Outcome outcome) {
    switch (outcome) {
        case Outcome::converged_coexistence: return "bounded-converged-coexistence";
        case Outcome::converged_extinction: return "bounded-converged-extinction";
        case Outcome::no_convergence: return "bounded-no-convergence";
        case Outcome::growth_indicator: return "growth-indicator";
        case Outcome::solver_failure: return "solver-failure";
    }
    return "?";
}

void apply_sweep_param(ModelParams& p, const std::string& name, double value) {
    if (name == "d1") p.d1 = value;
    else if (name == "d2") p.d2 = value;
    else if (name == "chi") p.chi = value;
    else if (name == "r") p.r = value;
    else if (name == "mu") p.mu = value;
    else if (name == "a") p.a = value;
    else if (name == "b") p.b = value;
    else if (name == "m") p.m = value;
    else if (name == "kappa") p.kappa = value;
    else if (name == "alpha") p.alpha = value;
    else if (name == "beta") p.beta = value;
    else if (name == "fbar") {
        if (p.source.kind != SourceSpec::Kind::constant) {
            throw std::invalid_argument("sweeping fbar requires a constant source");
        }
        p.source.amplitude = value;
    } else {
        throw std::invalid_argument("unknown sweep parameter '" + name + "'");
    }
}

void validate(const SweepSpec& spec) {
    if (spec.axes.empty() || spec.axes.size() > 2) {
        throw std::invalid_argument("sweep needs 1 or 2 axes");
    }
    long total = 1;
    for (const SweepAxis& axis : spec.axes) {
        if (axis.count < 1) throw std::invalid_argument("sweep axis range is empty");
        if (!(axis.lo <= axis.hi)) throw std::invalid_argument("sweep axis has lo > hi");
        if (axis.count > 1 && axis.lo == axis.hi) {
            throw std::invalid_argument("sweep axis range is degenerate");
        }
        total *= axis.count;
    }
    if (spec.axes.size() == 2 && spec.axes[0].param == spec.axes[1].param) {
        throw std::invalid_argument("swept parameters must be distinct");
    }
    if (total > spec.max_points) {
        throw std::invalid_argument("sweep exceeds the configured point cap");
    }
    // Probe the parameter names; tau and grid shape are not sweepable.
    for (const SweepAxis& axis : spec.axes) {
        ModelParams probe = spec.model;
        apply_sweep_param(probe, axis.param, 0.5 * (axis.lo + axis.hi));
    }
    validate(spec.grid);
    validate(spec.control);
}

Outcome classify_outcome(const RunReport& report, double convergence_threshold) {
    if (!report.failure.empty() && !report.growth_indicator) return Outcome::solver_failure;
    if (report.growth_indicator) return Outcome::growth_indicator;
    if (report.equilibria.has_coexistence &&
        report.final_dist_coexistence <= convergence_threshold) {
        return Outcome::converged_coexistence;
    }
    if (report.final_dist_semi <= convergence_threshold) return Outcome::converged_extinction;
    return Outcome::no_convergence;
}

namespace {

double axis_value(const SweepAxis& axis, int k) {
    if (axis.count == 1) return axis.lo;
    return axis.lo + (axis.hi - axis.lo) * k / static_cast<double>(axis.count - 1);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::vector<PhasePoint> run_sweep(const SweepSpec& spec) {
    validate(spec);
    const int n0 = spec.axes[0].count;
    const int n1 = spec.axes.size() == 2 ? spec.axes[1].count : 1;
    const int total = n0 * n1;

    std::vector<PhasePoint> table(static_cast<std::size_t>(total));

    const auto run_point = [&](int index) {
        const int i0 = index / n1;
        const int i1 = index % n1;
        PhasePoint& point = table[static_cast<std::size_t>(index)];
        point.n_coords = static_cast<int>(spec.axes.size());
        point.coords[0] = axis_value(spec.axes[0], i0);
        if (spec.axes.size() == 2) point.coords[1] = axis_value(spec.axes[1], i1);

        SimulationSetup setup;
        setup.model = spec.model;
        setup.grid = spec.grid;
        setup.control = spec.control;
        setup.initial = spec.initial;
        setup.initial.seed = mix_seed(spec.seed, static_cast<std::uint64_t>(index));
        setup.sampling = spec.sampling;
        setup.convergence_threshold = spec.convergence_threshold;
        setup.checks.clear();

        try {
            apply_sweep_param(setup.model, spec.axes[0].param, point.coords[0]);
            if (spec.axes.size() == 2) {
                apply_sweep_param(setup.model, spec.axes[1].param, point.coords[1]);
            }
            point.gate_pass = check_existence_gate(setup.model, setup.grid.dim).pass;
            const RunReport report = simulate(setup);
            point.outcome = classify_outcome(report, spec.convergence_threshold);
            point.fitted_rate =
                report.fit.available ? report.fit.rate : std::numeric_limits<double>::quiet_NaN();
            point.final_dist_inf = report.dist_inf_series.back();
        } catch (const std::exception&) {
            point.outcome = Outcome::solver_failure;
            point.fitted_rate = std::numeric_limits<double>::quiet_NaN();
            point.final_dist_inf = std::numeric_limits<double>::quiet_NaN();
        }
    };

    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(total));
    if (workers <= 1) {
        for (int i = 0; i < total; ++i) run_point(i);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (int i = next.fetch_add(1); i < total; i = next.fetch_add(1)) run_point(i);
            });
        }
        for (std::thread& th : pool) th.join();
    }
    return table;
}

}  // namespace toxitaxis
