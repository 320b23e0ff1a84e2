#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "toxitaxis/model.hpp"

using namespace toxitaxis;

namespace {

ModelParams base_params() {
    ModelParams p;
    p.d1 = 1.0;
    p.d2 = 1.0;
    p.chi = 1.0;
    p.r = 1.0;
    p.mu = 0.5;
    p.a = 1.0;
    p.b = 1.0;
    p.m = 1.0;
    p.kappa = 2.0;
    p.alpha = 0.5;
    p.beta = 0.25;
    p.tau = 1;
    p.source.kind = SourceSpec::Kind::constant;
    p.source.amplitude = 0.2;
    return p;
}

}  // namespace

TEST_CASE("diffusivity matches the saturating power law") {
    CHECK(diffusivity(0.0, 0.7) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(diffusivity(0.0, 3.2) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(diffusivity(1.0, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(diffusivity(3.0, 0.5) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("chemo sensitivity vanishes at zero density") {
    CHECK(chemo_sensitivity(0.0, 0.7) == 0.0);
    CHECK(chemo_sensitivity(1.0, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(chemo_sensitivity(2.0, 0.5) == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-15));
}

TEST_CASE("power-law families sit exactly on their structural bounds") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> s_dist(0.0, 50.0);
    std::uniform_real_distribution<double> e_dist(0.05, 3.0);
    for (int i = 0; i < 500; ++i) {
        const double s = s_dist(rng);
        const double alpha = e_dist(rng);
        const double beta = e_dist(rng);
        CHECK(diffusivity(s, alpha) == doctest::Approx(std::pow(s + 1.0, alpha)).epsilon(1e-14));
        const double sens = chemo_sensitivity(s, beta);
        CHECK(sens >= 0.0);
        CHECK(sens == doctest::Approx(s * std::pow(s + 1.0, beta)).epsilon(1e-14));
    }
}

TEST_CASE("existence gate examples") {
    ModelParams p = base_params();
    p.alpha = 1.0;
    p.beta = 0.2;
    p.m = 0.5;
    p.tau = 1;
    GateReport g = check_existence_gate(p, 2);
    CHECK(g.pass);
    CHECK(g.margin == doctest::Approx(1.3).epsilon(1e-12));

    p = base_params();
    p.alpha = 0.1;
    p.beta = 1.0;
    p.m = 0.1;
    p.tau = 0;
    g = check_existence_gate(p, 2);
    CHECK_FALSE(g.pass);  // 1.1 < 1.1 fails: the inequality is strict
    CHECK(g.margin == doctest::Approx(0.0).epsilon(1e-12));

    p = base_params();
    p.alpha = 0.5;
    p.beta = 0.5;
    p.m = 1.0;
    p.tau = 1;
    g = check_existence_gate(p, 4);
    CHECK_FALSE(g.pass);
    CHECK(g.margin == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("existence gate is monotone in each parameter") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> e_dist(0.05, 2.5);
    std::uniform_int_distribution<int> n_dist(1, 4);
    std::uniform_int_distribution<int> tau_dist(0, 1);
    for (int i = 0; i < 300; ++i) {
        ModelParams p = base_params();
        p.alpha = e_dist(rng);
        p.beta = e_dist(rng);
        p.m = e_dist(rng);
        p.tau = tau_dist(rng);
        const int n = n_dist(rng);
        const GateReport g = check_existence_gate(p, n);

        ModelParams up = p;
        up.alpha = p.alpha + 0.5;
        if (g.pass) {
            CHECK(check_existence_gate(up, n).pass);
            if (n > 1) CHECK(check_existence_gate(p, n - 1).pass);
        }
        ModelParams worse = p;
        worse.beta = p.beta + 0.5;
        if (!g.pass) {
            CHECK_FALSE(check_existence_gate(worse, n).pass);
            worse = p;
            worse.m = p.m + 0.5;
            CHECK_FALSE(check_existence_gate(worse, n).pass);
        }
    }
}

TEST_CASE("equilibria closed form for kappa = 2") {
    ModelParams p = base_params();
    const EquilibriumSet eq = equilibria(p, 0.2);
    REQUIRE(eq.has_coexistence);
    CHECK(eq.u_star == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(eq.v_star == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(eq.u_bar == 0.0);
    CHECK(eq.v_bar == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(equilibrium_residual(eq, p) <= 1e-12);
    CHECK(eq.u_star > 0.0);
    CHECK(eq.u_star < 1.0);
}

TEST_CASE("only the species-free state survives when fbar mu >= b r") {
    ModelParams p = base_params();
    p.mu = 1.0;
    const EquilibriumSet eq = equilibria(p, 2.0);
    CHECK_FALSE(eq.has_coexistence);
    CHECK(eq.v_bar == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(equilibrium_residual(eq, p) <= 1e-12);
}

TEST_CASE("zero supply gives the half-half balance") {
    ModelParams p = base_params();
    p.mu = 1.0;
    const EquilibriumSet eq = equilibria(p, 0.0);
    REQUIRE(eq.has_coexistence);
    CHECK(eq.u_star == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(eq.v_star == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(equilibrium_residual(eq, p) <= 1e-12);
}

TEST_CASE("random equilibria satisfy both reaction relations") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> coeff(0.2, 3.0);
    std::uniform_int_distribution<int> kappa_pick(0, 2);
    const double kappas[] = {2.0, 3.0, 4.0};
    int produced = 0;
    for (int i = 0; i < 400 && produced < 100; ++i) {
        ModelParams p = base_params();
        p.r = coeff(rng);
        p.mu = coeff(rng);
        p.a = coeff(rng);
        p.b = coeff(rng);
        p.kappa = kappas[kappa_pick(rng)];
        const double fbar = std::uniform_real_distribution<double>(0.0, 2.0)(rng);
        if (p.b * p.r <= fbar * p.mu) continue;
        const EquilibriumSet eq = equilibria(p, fbar);
        REQUIRE(eq.has_coexistence);
        CHECK(eq.u_star > 0.0);
        CHECK(eq.u_star < 1.0);
        CHECK(equilibrium_residual(eq, p) <= 1e-12);
        ++produced;
    }
    CHECK(produced == 100);
}

TEST_CASE("root solve agrees with the kappa = 2 closed form") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> coeff(0.2, 3.0);
    for (int i = 0; i < 100; ++i) {
        ModelParams p = base_params();
        p.r = coeff(rng);
        p.mu = coeff(rng);
        p.a = coeff(rng);
        p.b = coeff(rng);
        p.kappa = 2.0;
        const double fbar = 0.3 * coeff(rng);
        if (p.b * p.r <= fbar * p.mu) continue;
        const double closed = (p.b * p.r - fbar * p.mu) / (p.b * p.r + p.a * p.mu);
        const double root = detail::coexistence_root(p, fbar);
        CHECK(std::abs(root - closed) <= 1e-12 * std::max(1.0, std::abs(closed)));
    }
}

TEST_CASE("equilibria reject m != 1") {
    ModelParams p = base_params();
    p.m = 2.0;
    CHECK_THROWS_AS(equilibria(p, 0.2), std::invalid_argument);
}

TEST_CASE("root solve reports a degenerate bracket") {
    ModelParams p = base_params();
    p.kappa = 3.0;
    p.mu = 1.0;
    // br <= fbar mu: no sign change on (0,1).
    CHECK_THROWS_AS(detail::coexistence_root(p, 2.0), std::invalid_argument);
}

TEST_CASE("stability gate examples") {
    ModelParams p = base_params();  // chi=1, alpha=0.5, beta=0.25
    const EquilibriumSet eq = equilibria(p, 0.2);

    GateReport g = check_stability_gate(p, eq);
    CHECK(g.pass);  // 1 < 10/3 and 0.5 <= 0.5

    ModelParams strong = p;
    strong.chi = 2.0;
    g = check_stability_gate(strong, eq);
    CHECK_FALSE(g.pass);  // 4 > 10/3

    ModelParams steep = p;
    steep.beta = 0.3;
    g = check_stability_gate(steep, eq);
    CHECK_FALSE(g.pass);  // 0.6 > 0.5
}

TEST_CASE("stability gate rejects the semi-coexistence regime") {
    ModelParams p = base_params();
    p.mu = 1.0;
    const EquilibriumSet eq = equilibria(p, 2.0);
    CHECK_THROWS_AS(check_stability_gate(p, eq), std::invalid_argument);
}

TEST_CASE("parameter validation names the failed constraint") {
    ModelParams p = base_params();
    p.kappa = 0.5;
    CHECK_THROWS_WITH_AS(validate(p), "kappa must exceed 1", std::invalid_argument);
    p = base_params();
    p.tau = 2;
    CHECK_THROWS_WITH_AS(validate(p), "tau must be 0 or 1", std::invalid_argument);
    p = base_params();
    p.d1 = 0.0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p = base_params();
    p.mu = -0.1;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p = base_params();
    p.beta = 0.0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
}

TEST_CASE("every source kind stays within [0, amplitude]") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> xy(-0.5, 1.5);
    std::uniform_real_distribution<double> tdist(0.0, 25.0);

    SourceSpec sources[3];
    sources[0].kind = SourceSpec::Kind::constant;
    sources[0].amplitude = 0.7;
    sources[1].kind = SourceSpec::Kind::gaussian_bump;
    sources[1].amplitude = 1.3;
    sources[1].center = {0.4, 0.6};
    sources[1].width = 0.15;
    sources[2].kind = SourceSpec::Kind::time_periodic;
    sources[2].amplitude = 2.0;
    sources[2].period = 3.0;

    for (const SourceSpec& s : sources) {
        for (int i = 0; i < 300; ++i) {
            const double f = s(xy(rng), xy(rng), tdist(rng));
            CHECK(f >= 0.0);
            CHECK(f <= s.amplitude + 1e-15);
        }
    }
}
