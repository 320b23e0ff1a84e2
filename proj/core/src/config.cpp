#include "toxitaxis/config.hpp"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

namespace toxitaxis {

using nlohmann::json;

namespace {

// Tracks which keys of an object were consumed so leftovers can be
// reported as errors, with messages carrying the section path.
class Section {
  public:
    Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(path_ + " must be an object");
    }

    bool has(const char* key) {
        seen_.insert(key);
        return j_.contains(key);
    }

    const json& required(const char* key) {
        seen_.insert(key);
        if (!j_.contains(key)) throw ConfigError(path_ + "." + key + " is required");
        return j_.at(key);
    }

    double number(const char* key) {
        const json& v = required(key);
        if (!v.is_number()) throw ConfigError(path_ + "." + key + " must be a number");
        return v.get<double>();
    }

    double number_or(const char* key, double fallback) {
        if (!has(key)) return fallback;
        return number(key);
    }

    long long integer(const char* key) {
        const json& v = required(key);
        if (!v.is_number_integer()) throw ConfigError(path_ + "." + key + " must be an integer");
        return v.get<long long>();
    }

    long long integer_or(const char* key, long long fallback) {
        if (!has(key)) return fallback;
        return integer(key);
    }

    std::string text(const char* key) {
        const json& v = required(key);
        if (!v.is_string()) throw ConfigError(path_ + "." + key + " must be a string");
        return v.get<std::string>();
    }

    const std::string& path() const { return path_; }

    void finish() const {
        for (const auto& item : j_.items()) {
            if (!seen_.contains(item.key())) {
                throw ConfigError("unknown key '" + item.key() + "' in " + path_);
            }
        }
    }

  private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

SourceSpec parse_source(const json& j, const std::string& path) {
    Section s(j, path);
    SourceSpec source;
    source.kind = source_kind_from_name(s.text("kind"));
    source.amplitude = s.number("amplitude");
    if (source.kind == SourceSpec::Kind::gaussian_bump) {
        const json& center = s.required("center");
        if (!center.is_array() || center.empty() || center.size() > 2) {
            throw ConfigError(path + ".center must be an array of 1 or 2 coordinates");
        }
        source.center = {0.0, 0.0};
        for (std::size_t i = 0; i < center.size(); ++i) {
            source.center[i] = center[i].get<double>();
        }
        source.width = s.number("width");
    } else if (source.kind == SourceSpec::Kind::time_periodic) {
        source.period = s.number("period");
    }
    s.finish();
    return source;
}

ModelParams parse_model(const json& j) {
    Section s(j, "model");
    ModelParams p;
    p.d1 = s.number("d1");
    p.d2 = s.number("d2");
    p.chi = s.number("chi");
    p.r = s.number("r");
    p.mu = s.number("mu");
    p.a = s.number("a");
    p.b = s.number("b");
    p.m = s.number("m");
    p.kappa = s.number("kappa");
    p.alpha = s.number("alpha");
    p.beta = s.number("beta");
    p.tau = static_cast<int>(s.integer("tau"));
    p.source = parse_source(s.required("source"), "model.source");
    s.finish();
    try {
        validate(p);
    } catch (const std::invalid_argument& err) {
        throw ConfigError(std::string("model: ") + err.what());
    }
    return p;
}

Grid parse_grid(const json& j) {
    Section s(j, "grid");
    const int dim = static_cast<int>(s.integer("dim"));
    const json& extents = s.required("extents");
    const json& cells = s.required("cells");
    if (dim != 1 && dim != 2) throw ConfigError("grid.dim must be 1 or 2");
    if (!extents.is_array() || static_cast<int>(extents.size()) != dim) {
        throw ConfigError("grid.extents must be an array of length grid.dim");
    }
    if (!cells.is_array() || static_cast<int>(cells.size()) != dim) {
        throw ConfigError("grid.cells must be an array of length grid.dim");
    }
    s.finish();
    try {
        if (dim == 1) return Grid::line(extents[0].get<double>(), cells[0].get<int>());
        return Grid::box(extents[0].get<double>(), extents[1].get<double>(), cells[0].get<int>(),
                         cells[1].get<int>());
    } catch (const std::invalid_argument& err) {
        throw ConfigError(std::string("grid: ") + err.what());
    }
}

StepControl parse_control(const json& j) {
    Section s(j, "control");
    StepControl c;
    c.t_end = s.number("t_end");
    c.dt_init = s.number_or("dt_init", c.dt_init);
    c.dt_min = s.number_or("dt_min", c.dt_min);
    c.dt_max = s.number_or("dt_max", c.dt_max);
    c.cfl_safety = s.number_or("cfl_safety", c.cfl_safety);
    if (c.dt_init > c.dt_max) c.dt_init = c.dt_max;
    s.finish();
    try {
        validate(c);
    } catch (const std::invalid_argument& err) {
        throw ConfigError(std::string("control: ") + err.what());
    }
    return c;
}

InitialData parse_initial(const json& j, int tau) {
    Section s(j, "initial");
    InitialData init;
    init.u_level = s.number("u0");
    if (tau == 1) {
        init.v_level = s.number("v0");
    } else if (s.has("v0")) {
        throw ConfigError("initial.v0 is not used when tau = 0; remove it");
    }
    init.perturb_amplitude = s.number_or("perturb_amplitude", 0.0);
    init.seed = static_cast<std::uint64_t>(s.integer_or("seed", 0));
    s.finish();
    return init;
}

OutputSpec parse_output(const json& j) {
    Section s(j, "output");
    OutputSpec out;
    if (s.has("directory")) out.directory = s.text("directory");
    out.sample_interval = s.number_or("sample_interval", out.sample_interval);
    out.snapshots = static_cast<int>(s.integer_or("snapshots", out.snapshots));
    out.convergence_threshold = s.number_or("convergence_threshold", out.convergence_threshold);
    if (s.has("checks")) {
        const json& checks = s.required("checks");
        if (!checks.is_array()) throw ConfigError("output.checks must be an array of check names");
        out.checks.clear();
        for (const json& c : checks) out.checks.push_back(c.get<std::string>());
    }
    s.finish();
    return out;
}

json grid_to_json(const Grid& g) {
    json j;
    j["dim"] = g.dim;
    j["extents"] = g.dim == 1 ? json::array({g.extents[0]})
                              : json::array({g.extents[0], g.extents[1]});
    j["cells"] =
        g.dim == 1 ? json::array({g.cells[0]}) : json::array({g.cells[0], g.cells[1]});
    return j;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    try {
        return json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& err) {
        throw ConfigError(path + ": " + err.what());
    }
}

}  // namespace

SimulationSetup RunConfig::setup() const {
    SimulationSetup s;
    s.model = model;
    s.grid = grid;
    s.control = control;
    s.initial = initial;
    s.sampling.interval = output.sample_interval;
    s.sampling.snapshots = output.snapshots;
    s.convergence_threshold = output.convergence_threshold;
    s.checks = output.checks;
    return s;
}

RunConfig config_from_json(const json& j) {
    Section s(j, "config");
    RunConfig cfg;
    cfg.model = parse_model(s.required("model"));
    cfg.grid = parse_grid(s.required("grid"));
    cfg.control = parse_control(s.required("control"));
    cfg.initial = parse_initial(s.required("initial"), cfg.model.tau);
    if (s.has("output")) cfg.output = parse_output(s.required("output"));
    s.finish();
    try {
        validate(SimulationSetup{cfg.model, cfg.grid, cfg.control, cfg.initial,
                                 {cfg.output.sample_interval, cfg.output.snapshots},
                                 cfg.output.convergence_threshold, cfg.output.checks});
    } catch (const std::invalid_argument& err) {
        throw ConfigError(err.what());
    }
    return cfg;
}

RunConfig parse_config(const std::string& path) { return config_from_json(load_json(path)); }

json config_to_json(const RunConfig& cfg) {
    json j;
    json& model = j["model"];
    model["d1"] = cfg.model.d1;
    model["d2"] = cfg.model.d2;
    model["chi"] = cfg.model.chi;
    model["r"] = cfg.model.r;
    model["mu"] = cfg.model.mu;
    model["a"] = cfg.model.a;
    model["b"] = cfg.model.b;
    model["m"] = cfg.model.m;
    model["kappa"] = cfg.model.kappa;
    model["alpha"] = cfg.model.alpha;
    model["beta"] = cfg.model.beta;
    model["tau"] = cfg.model.tau;
    json& source = model["source"];
    source["kind"] = source_kind_name(cfg.model.source.kind);
    source["amplitude"] = cfg.model.source.amplitude;
    if (cfg.model.source.kind == SourceSpec::Kind::gaussian_bump) {
        source["center"] = cfg.grid.dim == 1
                               ? json::array({cfg.model.source.center[0]})
                               : json::array({cfg.model.source.center[0], cfg.model.source.center[1]});
        source["width"] = cfg.model.source.width;
    } else if (cfg.model.source.kind == SourceSpec::Kind::time_periodic) {
        source["period"] = cfg.model.source.period;
    }
    j["grid"] = grid_to_json(cfg.grid);
    json& control = j["control"];
    control["t_end"] = cfg.control.t_end;
    control["dt_init"] = cfg.control.dt_init;
    control["dt_min"] = cfg.control.dt_min;
    control["dt_max"] = cfg.control.dt_max;
    control["cfl_safety"] = cfg.control.cfl_safety;
    json& initial = j["initial"];
    initial["u0"] = cfg.initial.u_level;
    if (cfg.model.tau == 1) initial["v0"] = *cfg.initial.v_level;
    initial["perturb_amplitude"] = cfg.initial.perturb_amplitude;
    initial["seed"] = cfg.initial.seed;
    json& output = j["output"];
    output["directory"] = cfg.output.directory;
    output["sample_interval"] = cfg.output.sample_interval;
    output["snapshots"] = cfg.output.snapshots;
    output["checks"] = cfg.output.checks;
    output["convergence_threshold"] = cfg.output.convergence_threshold;
    return j;
}

SweepSpec sweep_spec_from_json(const json& j) {
    Section s(j, "sweep");
    SweepSpec spec;
    const json& axes = s.required("axes");
    if (!axes.is_array() || axes.empty() || axes.size() > 2) {
        throw ConfigError("sweep.axes must be an array of 1 or 2 axis objects");
    }
    int axis_idx = 0;
    for (const json& ja : axes) {
        Section a(ja, "sweep.axes[" + std::to_string(axis_idx) + "]");
        SweepAxis axis;
        axis.param = a.text("param");
        axis.lo = a.number("lo");
        axis.hi = a.number("hi");
        axis.count = static_cast<int>(a.integer("count"));
        a.finish();
        spec.axes.push_back(axis);
        ++axis_idx;
    }
    spec.model = parse_model(s.required("model"));
    spec.grid = parse_grid(s.required("grid"));
    spec.control = parse_control(s.required("control"));
    spec.initial = parse_initial(s.required("initial"), spec.model.tau);
    spec.sampling.interval = s.number_or("sample_interval", 0.0);
    spec.convergence_threshold = s.number_or("convergence_threshold", 1e-3);
    spec.seed = static_cast<std::uint64_t>(s.integer_or("seed", 0));
    spec.max_points = static_cast<int>(s.integer_or("max_points", 400));
    s.finish();
    try {
        validate(spec);
    } catch (const std::invalid_argument& err) {
        throw ConfigError(err.what());
    }
    return spec;
}

SweepSpec parse_sweep_spec(const std::string& path) {
    return sweep_spec_from_json(load_json(path));
}

}  // namespace toxitaxis
