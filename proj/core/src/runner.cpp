#include "toxitaxis/runner.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace toxitaxis {

namespace fs = std::filesystem;

std::string format_full(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

namespace {

std::ofstream open_for_write(const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    return out;
}

void prepare_directory(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
}

void write_snapshot(const fs::path& path, const Field& field) {
    std::ofstream out = open_for_write(path);
    const Grid& g = field.grid;
    out << "# cells " << g.cells[0];
    if (g.dim == 2) out << ' ' << g.cells[1];
    out << "\n# extents " << format_full(g.extents[0]);
    if (g.dim == 2) out << ' ' << format_full(g.extents[1]);
    out << '\n';
    for (double v : field.values) out << format_full(v) << '\n';
}

const char* const kSeriesNames[] = {"mass", "sup_u",  "sup_v", "grad_v_sup", "E1",
                                    "E2",   "f1",     "f2",    "dist_inf"};

const std::vector<double>& series_by_index(const RunReport& r, int k) {
    switch (k) {
        case 0: return r.mass_series;
        case 1: return r.sup_u_series;
        case 2: return r.sup_v_series;
        case 3: return r.grad_v_sup_series;
        case 4: return r.E1_series;
        case 5: return r.E2_series;
        case 6: return r.f1_series;
        case 7: return r.f2_series;
        default: return r.dist_inf_series;
    }
}

}  // namespace

std::string series_csv(const RunReport& r) {
    std::string out = "t,mass,sup_u,sup_v,grad_v_sup,E1,E2,f1,f2,dist_inf\n";
    for (std::size_t i = 0; i < r.times.size(); ++i) {
        out += format_full(r.times[i]);
        for (int k = 0; k < 9; ++k) {
            out += ',';
            out += format_full(series_by_index(r, k)[i]);
        }
        out += '\n';
    }
    return out;
}

std::string verdicts_csv(const RunReport& r) {
    std::string out = "check,pass,margin,note\n";
    for (const Verdict& v : r.verdicts) {
        out += v.name;
        out += v.pass ? ",pass," : ",fail,";
        out += format_full(v.value);
        out += ',';
        out += v.note;
        out += '\n';
    }
    return out;
}

std::string phase_csv(const SweepSpec& spec, const std::vector<PhasePoint>& table) {
    std::string out = spec.axes[0].param;
    if (spec.axes.size() == 2) {
        out += ',';
        out += spec.axes[1].param;
    }
    out += ",gate_pass,outcome,fitted_rate,final_dist_inf\n";
    for (const PhasePoint& p : table) {
        out += format_full(p.coords[0]);
        if (p.n_coords == 2) {
            out += ',';
            out += format_full(p.coords[1]);
        }
        out += p.gate_pass ? ",1," : ",0,";
        out += outcome_name(p.outcome);
        out += ',';
        out += format_full(p.fitted_rate);
        out += ',';
        out += format_full(p.final_dist_inf);
        out += '\n';
    }
    return out;
}

int run_simulation_command(const RunConfig& config) {
    const fs::path dir(config.output.directory);
    prepare_directory(dir);
    prepare_directory(dir / "plot");
    // Open every stream up front so an unwritable target fails before any
    // simulation work starts.
    std::ofstream series_out = open_for_write(dir / "series.csv");
    std::ofstream verdicts_out = open_for_write(dir / "verdicts.csv");
    std::ofstream plot_out = open_for_write(dir / "plot" / "series_long.csv");

    const RunReport report = simulate(config.setup());

    series_out << series_csv(report);
    verdicts_out << verdicts_csv(report);

    plot_out << "t,series,value\n";
    for (int k = 0; k < 9; ++k) {
        const std::vector<double>& series = series_by_index(report, k);
        for (std::size_t i = 0; i < report.times.size(); ++i) {
            plot_out << format_full(report.times[i]) << ',' << kSeriesNames[k] << ','
                     << format_full(series[i]) << '\n';
        }
    }

    for (std::size_t k = 0; k < report.snapshots.size(); ++k) {
        const State& st = report.snapshots[k].second;
        write_snapshot(dir / ("u_" + std::to_string(k) + ".csv"), st.u);
        write_snapshot(dir / ("v_" + std::to_string(k) + ".csv"), st.v);
    }

    if (!report.failure.empty()) return exit_code::divergence;
    return report.all_verdicts_pass() ? exit_code::ok : exit_code::verdict_failure;
}

int run_sweep_command(const SweepSpec& spec, const std::string& out_dir) {
    const fs::path dir(out_dir);
    prepare_directory(dir);
    std::ofstream out = open_for_write(dir / "phase.csv");
    const std::vector<PhasePoint> table = run_sweep(spec);
    out << phase_csv(spec, table);
    return exit_code::ok;
}

}  // namespace toxitaxis
