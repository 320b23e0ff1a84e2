// Command-line front end: single runs, parameter sweeps, and dry checks
// of the theorem gates and steady states for a given configuration.

#include <cstdio>
#include <exception>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "toxitaxis/config.hpp"
#include "toxitaxis/runner.hpp"

namespace {

using namespace toxitaxis;

void apply_overrides(RunConfig& config, const std::optional<std::string>& out,
                     const std::optional<std::uint64_t>& seed, const std::optional<int>& snapshots) {
    if (out) config.output.directory = *out;
    if (seed) config.initial.seed = *seed;
    if (snapshots) config.output.snapshots = *snapshots;
}

void print_gate(const GateReport& gate) {
    std::printf("%s: %s margin=%s (%s)\n", gate.name.c_str(), gate.pass ? "PASS" : "FAIL",
                format_full(gate.margin).c_str(), gate.detail.c_str());
}

int check_gates(const RunConfig& config) {
    print_gate(check_existence_gate(config.model, config.grid.dim));
    const double fbar = mean_source_value(config.model.source, config.grid);
    if (std::abs(config.model.m - 1.0) <= 1e-12 && config.model.kappa >= 2.0) {
        const EquilibriumSet eq = equilibria(config.model, fbar);
        if (eq.has_coexistence) {
            print_gate(check_stability_gate(config.model, eq));
        } else {
            std::printf("stability-gate: not applicable (semi-coexistence regime, fbar=%s)\n",
                        format_full(fbar).c_str());
        }
    } else {
        std::printf("stability-gate: not applicable (requires m = 1 and kappa >= 2)\n");
    }
    return exit_code::ok;
}

int print_equilibria(const RunConfig& config) {
    const double fbar = mean_source_value(config.model.source, config.grid);
    if (std::abs(config.model.m - 1.0) > 1e-12) {
        std::printf("fbar = %s\n", format_full(fbar).c_str());
        std::printf("coexistence state: not available for m != 1\n");
        std::printf("semi-coexistence: u = 0, v = %s\n",
                    format_full(fbar / config.model.b).c_str());
        return exit_code::ok;
    }
    const EquilibriumSet eq = equilibria(config.model, fbar);
    std::printf("fbar = %s%s\n", format_full(fbar).c_str(),
                config.model.source.is_constant() ? "" : " (mean of non-constant source)");
    std::printf("regime: %s\n", eq.regime());
    if (eq.has_coexistence) {
        std::printf("coexistence: u* = %s, v* = %s\n", format_full(eq.u_star).c_str(),
                    format_full(eq.v_star).c_str());
    }
    std::printf("semi-coexistence: u = %s, v = %s\n", format_full(eq.u_bar).c_str(),
                format_full(eq.v_bar).c_str());
    std::printf("max relative residual = %s\n",
                format_full(equilibrium_residual(eq, config.model)).c_str());
    return exit_code::ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chemo-repulsion system simulator"};
    app.require_subcommand(1);

    std::string config_path, spec_path;
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> snapshots;

    CLI::App* simulate_cmd = app.add_subcommand("simulate", "run one configured simulation");
    simulate_cmd->add_option("config", config_path, "JSON run configuration")->required();
    simulate_cmd->add_option("--out", out_dir, "output directory (overrides config)");
    simulate_cmd->add_option("--seed", seed, "perturbation seed (overrides config)");
    simulate_cmd->add_option("--snapshots", snapshots, "number of field snapshots to write");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep");
    sweep_cmd->add_option("spec", spec_path, "JSON sweep specification")->required();
    sweep_cmd->add_option("--out", out_dir, "output directory");
    sweep_cmd->add_option("--seed", seed, "base seed (overrides spec)");

    CLI::App* gates_cmd = app.add_subcommand("check-gates", "print gate reports, no simulation");
    gates_cmd->add_option("config", config_path, "JSON run configuration")->required();

    CLI::App* eq_cmd = app.add_subcommand("equilibria", "print the steady states");
    eq_cmd->add_option("config", config_path, "JSON run configuration")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate_cmd->parsed()) {
            RunConfig config = parse_config(config_path);
            apply_overrides(config, out_dir, seed, snapshots);
            return run_simulation_command(config);
        }
        if (sweep_cmd->parsed()) {
            SweepSpec spec = parse_sweep_spec(spec_path);
            if (seed) spec.seed = *seed;
            return run_sweep_command(spec, out_dir.value_or("out"));
        }
        if (gates_cmd->parsed()) return check_gates(parse_config(config_path));
        if (eq_cmd->parsed()) return print_equilibria(parse_config(config_path));
    } catch (const ConfigError& err) {
        std::fprintf(stderr, "config error: %s\n", err.what());
        return toxitaxis::exit_code::config_error;
    } catch (const std::invalid_argument& err) {
        std::fprintf(stderr, "config error: %s\n", err.what());
        return toxitaxis::exit_code::config_error;
    } catch (const toxitaxis::IoError& err) {
        std::fprintf(stderr, "i/o error: %s\n", err.what());
        return toxitaxis::exit_code::io_error;
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return toxitaxis::exit_code::divergence;
    }
    return toxitaxis::exit_code::config_error;
}
