#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "toxitaxis/diagnostics.hpp"
#include "toxitaxis/operators.hpp"

using namespace toxitaxis;

namespace {

ModelParams params_with(double mu, int tau, double a = 1.0) {
    ModelParams p;
    p.mu = mu;
    p.tau = tau;
    p.a = a;
    p.chi = 1.0;
    p.kappa = 2.0;
    p.alpha = 0.5;
    p.beta = 0.25;
    p.source.amplitude = 0.2;
    return p;
}

State uniform_state(const Grid& g, double u, double v) {
    State s;
    s.u = Field(g, u);
    s.v = Field(g, v);
    return s;
}

}  // namespace

TEST_CASE("E1 vanishes exactly at the coexistence state") {
    const Grid g = Grid::line(1.0, 16);
    const ModelParams p = params_with(0.5, 1);
    const EquilibriumSet eq = equilibria(p, 0.2);
    CHECK(lyapunov_E1(uniform_state(g, eq.u_star, eq.v_star), eq, p) ==
          doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("E1 closed form on a doubled density") {
    const Grid g = Grid::line(1.0, 32);
    const ModelParams p = params_with(0.5, 1);
    const EquilibriumSet eq = equilibria(p, 0.2);
    const double expected = p.a * eq.u_star * (1.0 - std::log(2.0));
    CHECK(lyapunov_E1(uniform_state(g, 2.0 * eq.u_star, eq.v_star), eq, p) ==
          doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("E1 ignores the chemical for tau = 0") {
    const Grid g = Grid::line(1.0, 16);
    const ModelParams p = params_with(0.5, 0);
    const EquilibriumSet eq = equilibria(p, 0.2);
    const double e_near = lyapunov_E1(uniform_state(g, 0.9, eq.v_star), eq, p);
    const double e_far = lyapunov_E1(uniform_state(g, 0.9, eq.v_star + 5.0), eq, p);
    CHECK(e_near == e_far);
    CHECK(e_near > 0.0);
}

TEST_CASE("E1 two-sided quadratic bracket near the steady state") {
    const Grid g = Grid::line(1.0, 16);
    const ModelParams p = params_with(0.5, 0);
    const EquilibriumSet eq = equilibria(p, 0.2);
    for (double rel : {-0.1, -0.05, 0.02, 0.08}) {
        const double u = eq.u_star * (1.0 + rel);
        const double quad = (u - eq.u_star) * (u - eq.u_star);
        const double entropy = lyapunov_E1(uniform_state(g, u, eq.v_star), eq, p) / p.a;
        CHECK(entropy >= quad / (4.0 * eq.u_star));
        CHECK(entropy <= 3.0 * quad / (4.0 * eq.u_star));
    }
}

TEST_CASE("E2 trivial values") {
    const Grid g = Grid::line(1.0, 16);
    const double v_bar = 2.0;
    CHECK(lyapunov_E2(uniform_state(g, 0.0, v_bar), params_with(0.5, 1), v_bar) == 0.0);
    CHECK(lyapunov_E2(uniform_state(g, 1.0, 7.0), params_with(0.5, 0, 1.0), v_bar) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lyapunov_E2(uniform_state(g, 1.0, v_bar + 1.0), params_with(0.5, 1, 1.0), v_bar) ==
          doctest::Approx(1.25).epsilon(1e-14));
}

TEST_CASE("dissipation quantities vanish exactly at their steady states") {
    const Grid g = Grid::line(1.0, 16);
    const ModelParams p = params_with(0.5, 1);
    const EquilibriumSet eq = equilibria(p, 0.2);
    CHECK(dissipation_f1(uniform_state(g, eq.u_star, eq.v_star), eq) == 0.0);
    CHECK(dissipation_f2(uniform_state(g, 0.0, eq.v_bar), eq.v_bar) == 0.0);
    CHECK(dissipation_f1(uniform_state(g, eq.u_star + 1.0, eq.v_star), eq) ==
          doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("dissipation quantities match an independent quadrature") {
    const Grid g = Grid::line(1.0, 77);
    const ModelParams p = params_with(0.5, 1);
    const EquilibriumSet eq = equilibria(p, 0.2);
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> dist(0.0, 2.0);
    State s = uniform_state(g, 0.0, 0.0);
    for (double& x : s.u.values) x = dist(rng);
    for (double& x : s.v.values) x = dist(rng);

    const double h = g.cell_volume();
    double f1_ref = 0.0, f2_ref = 0.0;
    for (std::size_t i = 0; i < s.u.size(); ++i) {
        f1_ref += ((s.u[i] - eq.u_star) * (s.u[i] - eq.u_star) +
                   (s.v[i] - eq.v_star) * (s.v[i] - eq.v_star)) *
                  h;
        f2_ref += (s.u[i] * s.u[i] + (s.v[i] - eq.v_bar) * (s.v[i] - eq.v_bar)) * h;
    }
    CHECK(dissipation_f1(s, eq) == doctest::Approx(f1_ref).epsilon(1e-12));
    CHECK(dissipation_f2(s, eq.v_bar) == doctest::Approx(f2_ref).epsilon(1e-12));
}

TEST_CASE("decay-rate fit recovers exact exponentials") {
    std::vector<double> t, y;
    for (int i = 0; i < 100; ++i) {
        t.push_back(0.1 * i);
        y.push_back(std::exp(-0.5 * t.back()));
    }
    const FitResult fit = fit_decay_rate(t, y);
    CHECK(fit.rate == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(fit.residual <= 1e-9);
    CHECK(fit.window_begin >= 4.9);
}

TEST_CASE("decay-rate fit reports zero slope for constants") {
    std::vector<double> t, y;
    for (int i = 0; i < 50; ++i) {
        t.push_back(0.2 * i);
        y.push_back(0.7);
    }
    const FitResult fit = fit_decay_rate(t, y);
    CHECK(std::abs(fit.rate) <= 1e-9);
}

TEST_CASE("decay-rate fit tolerates a perturbed exponential") {
    std::vector<double> t, y;
    for (int i = 0; i < 200; ++i) {
        t.push_back(0.1 * i);
        y.push_back(std::exp(-0.3 * t.back()) * (1.0 + 0.01 * std::sin(t.back())));
    }
    const FitResult fit = fit_decay_rate(t, y);
    CHECK(std::abs(fit.rate - 0.3) <= 0.02);
    CHECK(fit.residual < 0.1);
}

TEST_CASE("decay-rate fit needs enough usable samples") {
    std::vector<double> t{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    std::vector<double> y(10, 1e-16);  // everything below the floor
    CHECK_THROWS_AS(fit_decay_rate(t, y), InsufficientDataError);
    t.resize(4);
    std::vector<double> y4(4, 1.0);
    CHECK_THROWS_AS(fit_decay_rate(t, y4), InsufficientDataError);
}

TEST_CASE("mass bound verdict") {
    RunReport report;
    report.mass_bound_M = 2.0;
    report.mass_series = {1.9, 1.5, 1.2};
    Verdict v = mass_bound_check(report);
    CHECK(v.pass);
    CHECK(v.value == doctest::Approx(0.95));

    report.mass_series = {1.9, 2.1, 1.2};
    v = mass_bound_check(report);
    CHECK_FALSE(v.pass);
    CHECK(v.value == doctest::Approx(1.05));
}

TEST_CASE("energy monotonicity violation detector") {
    std::vector<double> t, decaying, bump;
    for (int i = 0; i <= 100; ++i) {
        t.push_back(0.1 * i);
        decaying.push_back(std::exp(-t.back()));
        bump.push_back(std::exp(-t.back()));
    }
    bump[80] += 0.5;  // a genuine increase from sample 79 to 80
    CHECK(energy_monotonicity_violation(t, decaying, 1e-3) <= 0.0);
    CHECK(energy_monotonicity_violation(t, bump, 1e-3) > 0.0);
}
