#pragma once

// File output and exit-code policy for the command-line front end.
//
// Exit codes: 0 all enabled verdicts pass, 1 configuration error,
// 2 divergence / solver failure (the report is still written),
// 3 I/O error, 4 completed run with failing verdicts.

#include <stdexcept>
#include <string>
#include <vector>

#include "toxitaxis/config.hpp"
#include "toxitaxis/diagnostics.hpp"
#include "toxitaxis/experiments.hpp"

namespace toxitaxis {

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config_error = 1;
inline constexpr int divergence = 2;
inline constexpr int io_error = 3;
inline constexpr int verdict_failure = 4;
}  // namespace exit_code

// Shortest-exact double formatting used in every CSV cell; values parse
// back bit-identically.
std::string format_full(double value);

// Runs a configured simulation and writes series.csv, verdicts.csv,
// optional snapshots and plot/series_long.csv into the output directory.
// Returns the exit code; throws IoError when the directory cannot be
// prepared (before any simulation work starts).
int run_simulation_command(const RunConfig& config);

// Runs a sweep and writes phase.csv under out_dir. Gate failures and
// failed points are data, not errors.
int run_sweep_command(const SweepSpec& spec, const std::string& out_dir);

// Serialization helpers shared with the tests.
std::string series_csv(const RunReport& report);
std::string verdicts_csv(const RunReport& report);
std::string phase_csv(const SweepSpec& spec, const std::vector<PhasePoint>& table);

}  // namespace toxitaxis
