#include "toxitaxis/model.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace toxitaxis {

double SourceSpec::spatial(double x, double y) const {
    switch (kind) {
        case Kind::constant:
        case Kind::time_periodic:
            return amplitude;
        case Kind::gaussian_bump: {
            const double dx = x - center[0];
            const double dy = y - center[1];
            return amplitude * std::exp(-(dx * dx + dy * dy) / (2.0 * width * width));
        }
    }
    return 0.0;
}

double SourceSpec::time_factor(double t) const {
    if (kind == Kind::time_periodic) {
        return 0.5 * (1.0 + std::sin(2.0 * M_PI * t / period));
    }
    return 1.0;
}

double SourceSpec::mean_time_factor() const {
    return kind == Kind::time_periodic ? 0.5 : 1.0;
}

SourceSpec::Kind source_kind_from_name(const std::string& name) {
    if (name == "constant") return SourceSpec::Kind::constant;
    if (name == "gaussian-bump") return SourceSpec::Kind::gaussian_bump;
    if (name == "time-periodic") return SourceSpec::Kind::time_periodic;
    throw std::invalid_argument("source.kind must be one of constant, gaussian-bump, time-periodic (got '" + name + "')");
}

const char* source_kind_name(SourceSpec::Kind kind) {
    switch (kind) {
        case SourceSpec::Kind::constant: return "constant";
        case SourceSpec::Kind::gaussian_bump: return "gaussian-bump";
        case SourceSpec::Kind::time_periodic: return "time-periodic";
    }
    return "?";
}

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

void validate(const ModelParams& p) {
    require(std::isfinite(p.d1) && p.d1 > 0.0, "d1 must be positive");
    require(std::isfinite(p.d2) && p.d2 > 0.0, "d2 must be positive");
    require(std::isfinite(p.chi) && p.chi >= 0.0, "chi must be nonnegative");
    require(std::isfinite(p.r) && p.r > 0.0, "r must be positive");
    require(std::isfinite(p.mu) && p.mu > 0.0, "mu must be positive");
    require(std::isfinite(p.a) && p.a > 0.0, "a must be positive");
    require(std::isfinite(p.b) && p.b > 0.0, "b must be positive");
    require(std::isfinite(p.m) && p.m > 0.0, "m must be positive");
    require(std::isfinite(p.kappa) && p.kappa > 1.0, "kappa must exceed 1");
    require(std::isfinite(p.alpha) && p.alpha > 0.0, "alpha must be positive");
    require(std::isfinite(p.beta) && p.beta > 0.0, "beta must be positive");
    require(p.tau == 0 || p.tau == 1, "tau must be 0 or 1");
    require(std::isfinite(p.source.amplitude) && p.source.amplitude >= 0.0,
            "source.amplitude must be nonnegative");
    if (p.source.kind == SourceSpec::Kind::gaussian_bump) {
        require(std::isfinite(p.source.width) && p.source.width > 0.0,
                "source.width must be positive");
    }
    if (p.source.kind == SourceSpec::Kind::time_periodic) {
        require(std::isfinite(p.source.period) && p.source.period > 0.0,
                "source.period must be positive");
    }
}

double diffusivity(double s, double alpha) {
    return std::pow(1.0 + s, alpha);
}

double chemo_sensitivity(double s, double beta) {
    return s * std::pow(1.0 + s, beta);
}

GateReport check_existence_gate(const ModelParams& p, int dim) {
    validate(p);
    if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
    const double rhs = p.alpha + 2.0 / static_cast<double>(dim);
    const double lhs = p.tau == 1 ? p.beta + p.m : std::max(p.beta, p.beta + p.m);
    GateReport report;
    report.name = "existence-gate";
    report.margin = rhs - lhs;
    report.pass = lhs < rhs;
    std::ostringstream os;
    os << (p.tau == 1 ? "beta+m" : "max{beta, beta+m}") << "=" << lhs
       << (report.pass ? " < " : " >= ") << "alpha+2/n=" << rhs;
    report.detail = os.str();
    return report;
}

namespace detail {

double coexistence_root(const ModelParams& p, double fbar) {
    const auto g = [&](double u) {
        return p.r * (1.0 - std::pow(u, p.kappa - 1.0)) - p.mu * (p.a * u + fbar) / p.b;
    };
    double lo = 0.0, hi = 1.0;
    double glo = g(lo), ghi = g(hi);
    if (!(glo > 0.0) || !(ghi < 0.0)) {
        throw std::invalid_argument(
            "degenerate parameters: no sign change bracketing the coexistence state on (0,1)");
    }
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (gm > 0.0) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
            ghi = gm;
        }
    }
    // Newton polish; the bisection bracket is already ~1e-24 wide, so one
    // or two steps land on the closest representable root.
    double u = 0.5 * (lo + hi);
    for (int it = 0; it < 4; ++it) {
        const double gu = g(u);
        const double dgu = -p.r * (p.kappa - 1.0) * std::pow(u, p.kappa - 2.0) - p.mu * p.a / p.b;
        const double next = u - gu / dgu;
        if (!(next > 0.0 && next < 1.0)) break;
        u = next;
    }
    return u;
}

}  // namespace detail

EquilibriumSet equilibria(const ModelParams& p, double fbar) {
    validate(p);
    if (!(fbar >= 0.0) || !std::isfinite(fbar)) {
        throw std::invalid_argument("fbar must be finite and nonnegative");
    }
    if (std::abs(p.m - 1.0) > 1e-12) {
        throw std::invalid_argument("equilibria are defined for m = 1 only");
    }
    EquilibriumSet eq;
    eq.fbar = fbar;
    eq.u_bar = 0.0;
    eq.v_bar = fbar / p.b;
    if (p.b * p.r > fbar * p.mu) {
        eq.has_coexistence = true;
        if (std::abs(p.kappa - 2.0) < 1e-12) {
            eq.u_star = (p.b * p.r - fbar * p.mu) / (p.b * p.r + p.a * p.mu);
        } else {
            eq.u_star = detail::coexistence_root(p, fbar);
        }
        eq.v_star = (p.a * eq.u_star + fbar) / p.b;
    }
    return eq;
}

namespace {

double relative_residual(const ModelParams& p, double fbar, double u, double v) {
    const double growth = p.r * u * (1.0 - std::pow(u, p.kappa - 1.0)) - p.mu * u * v;
    const double supply = p.a * u - p.b * v + fbar;
    const double growth_scale =
        p.r * u + p.r * u * std::pow(u, p.kappa - 1.0) + p.mu * u * v + 1e-30;
    const double supply_scale = p.a * u + p.b * v + fbar + 1e-30;
    return std::max(std::abs(growth) / growth_scale, std::abs(supply) / supply_scale);
}

}  // namespace

double equilibrium_residual(const EquilibriumSet& eq, const ModelParams& p) {
    double res = relative_residual(p, eq.fbar, eq.u_bar, eq.v_bar);
    if (eq.has_coexistence) {
        res = std::max(res, relative_residual(p, eq.fbar, eq.u_star, eq.v_star));
    }
    return res;
}

GateReport check_stability_gate(const ModelParams& p, const EquilibriumSet& eq) {
    validate(p);
    if (!eq.has_coexistence) {
        throw std::invalid_argument(
            "stability gate applies to the coexistence regime only (br > fbar*mu required)");
    }
    if (std::abs(p.m - 1.0) > 1e-12 || p.kappa < 2.0) {
        throw std::invalid_argument("stability gate requires m = 1 and kappa >= 2");
    }
    const double chi_bound = 4.0 * p.d1 * p.d2 * p.mu / (p.a * eq.u_star);
    const double chi_margin = chi_bound - p.chi * p.chi;
    const double exponent_margin = p.alpha - 2.0 * p.beta;
    GateReport report;
    report.name = "stability-gate";
    report.pass = (p.chi * p.chi < chi_bound) && (2.0 * p.beta <= p.alpha);
    report.margin = std::min(chi_margin, exponent_margin);
    std::ostringstream os;
    os << "chi^2=" << p.chi * p.chi << " vs 4*d1*d2*mu/(a*u*)=" << chi_bound
       << "; 2*beta=" << 2.0 * p.beta << " vs alpha=" << p.alpha;
    report.detail = os.str();
    return report;
}

}  // namespace toxitaxis
