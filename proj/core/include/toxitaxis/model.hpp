#pragma once

// Model definition for a chemo-repulsion system with lethal feedback.
// Two fields on a box domain with zero-flux boundaries:
//
//   u_t     = d1 div(D(u) grad u) + chi div(S(u) grad v)
//             + r u (1 - u^(kappa-1)) - mu u v
//   tau v_t = d2 lap(v) + a u^m - b v + f(x,t),   tau in {0, 1}
//
// where u is the species density and v the concentration of a chemical
// that the species both produces and is killed by. The nonlinearities are
// the saturating power laws D(s) = (1+s)^alpha and S(s) = s (1+s)^beta,
// and the external supply f is bounded, 0 <= f <= K.

#include <array>
#include <string>

namespace toxitaxis {

// Bounded external supply term f(x,t) = spatial_profile(x) * time_factor(t).
// Every kind satisfies 0 <= f <= amplitude.
struct SourceSpec {
    enum class Kind { constant, gaussian_bump, time_periodic };

    Kind kind = Kind::constant;
    double amplitude = 0.0;                  // bound K; f never exceeds it
    std::array<double, 2> center{0.5, 0.5};  // gaussian-bump only
    double width = 0.1;                      // gaussian-bump only
    double period = 1.0;                     // time-periodic only

    double spatial(double x, double y) const;
    double time_factor(double t) const;
    double operator()(double x, double y, double t) const {
        return spatial(x, y) * time_factor(t);
    }
    bool is_constant() const { return kind == Kind::constant; }
    // Time-average of the time factor (1 for constant profiles, 1/2 for
    // the sinusoidal modulation).
    double mean_time_factor() const;

    friend bool operator==(const SourceSpec&, const SourceSpec&) = default;
};

SourceSpec::Kind source_kind_from_name(const std::string& name);
const char* source_kind_name(SourceSpec::Kind kind);

struct ModelParams {
    double d1 = 1.0;     // species diffusion coefficient, > 0
    double d2 = 1.0;     // chemical diffusion coefficient, > 0
    double chi = 0.0;    // chemo-repulsion strength, >= 0
    double r = 1.0;      // logistic growth rate, > 0
    double mu = 1.0;     // lethality coefficient, > 0
    double a = 1.0;      // chemical production rate, > 0
    double b = 1.0;      // chemical decay rate, > 0
    double m = 1.0;      // production exponent, > 0
    double kappa = 2.0;  // logistic exponent, > 1
    double alpha = 1.0;  // diffusion exponent, > 0
    double beta = 1.0;   // sensitivity exponent, > 0
    int tau = 1;         // 1: both equations parabolic; 0: v slaved elliptically
    SourceSpec source;

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

// Throws std::invalid_argument naming the offending field. Every public
// entry point that consumes ModelParams calls this first.
void validate(const ModelParams& params);

// The saturating diffusivity D(s) = (1+s)^alpha.
double diffusivity(double s, double alpha);
// The chemotactic sensitivity S(s) = s (1+s)^beta; S(0) = 0.
double chemo_sensitivity(double s, double beta);

struct GateReport {
    std::string name;
    bool pass = false;
    double margin = 0.0;  // positive when the condition holds strictly
    std::string detail;
};

// Global-boundedness gate: beta + m < alpha + 2/n for tau = 1,
// max{beta, beta + m} < alpha + 2/n for tau = 0. Strict inequality;
// margin = (alpha + 2/n) - lhs.
GateReport check_existence_gate(const ModelParams& params, int dim);

// Spatially homogeneous steady states for m = 1 and constant supply fbar.
//
// Semi-coexistence (u_bar, v_bar) = (0, fbar/b) always exists. The
// coexistence state exists iff b r > fbar mu and solves
//   r (1 - u^(kappa-1)) = mu (a u + fbar) / b,   v = (a u + fbar) / b.
// For kappa = 2 this is u* = (br - fbar mu)/(br + a mu) in closed form.
struct EquilibriumSet {
    bool has_coexistence = false;
    double u_star = 0.0;
    double v_star = 0.0;
    double u_bar = 0.0;
    double v_bar = 0.0;
    double fbar = 0.0;

    const char* regime() const {
        return has_coexistence ? "coexistence" : "semi-coexistence";
    }
};

EquilibriumSet equilibria(const ModelParams& params, double fbar);

// Largest relative residual of the two steady-state relations over the
// states present in the set.
double equilibrium_residual(const EquilibriumSet& eq, const ModelParams& params);

// Convergence gate for the coexistence state:
//   chi^2 < 4 d1 d2 mu / (a u*)   and   2 beta <= alpha,
// applicable when the coexistence state exists, m = 1 and kappa >= 2.
// Throws std::invalid_argument when eq carries no coexistence state.
GateReport check_stability_gate(const ModelParams& params, const EquilibriumSet& eq);

namespace detail {
// Root of r (1 - u^(kappa-1)) - mu (a u + fbar)/b on (0,1) by bisection
// plus Newton polish. Used by equilibria() for kappa > 2; exposed so the
// kappa = 2 closed form can be cross-checked against it.
double coexistence_root(const ModelParams& params, double fbar);
}  // namespace detail

}  // namespace toxitaxis
