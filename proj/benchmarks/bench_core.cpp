#include <benchmark/benchmark.h>

#include <random>

#include "toxitaxis/linear_solver.hpp"
#include "toxitaxis/operators.hpp"
#include "toxitaxis/solver.hpp"

using namespace toxitaxis;

namespace {

Field random_field(const Grid& g, std::uint64_t seed, double lo = 0.0, double hi = 2.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    Field f(g);
    for (double& v : f.values) v = dist(rng);
    return f;
}

ModelParams bench_params() {
    ModelParams p;
    p.mu = 0.5;
    p.chi = 1.0;
    p.alpha = 0.5;
    p.beta = 0.25;
    p.source.amplitude = 0.2;
    return p;
}

void BM_Laplacian1D(benchmark::State& state) {
    const Grid g = Grid::line(1.0, static_cast<int>(state.range(0)));
    const Field u = random_field(g, 1);
    Field out(g);
    for (auto _ : state) {
        laplacian_neumann_into(u, out);
        benchmark::DoNotOptimize(out.values.data());
    }
    state.SetItemsProcessed(state.iterations() * g.cell_count());
}
BENCHMARK(BM_Laplacian1D)->Arg(128)->Arg(1024);

void BM_NonlinearDiffusion(benchmark::State& state) {
    const Grid g = Grid::line(1.0, static_cast<int>(state.range(0)));
    const Field u = random_field(g, 2);
    Field scratch(g), out(g);
    for (auto _ : state) {
        div_nonlinear_diffusion_into(u, 0.5, scratch, out);
        benchmark::DoNotOptimize(out.values.data());
    }
    state.SetItemsProcessed(state.iterations() * g.cell_count());
}
BENCHMARK(BM_NonlinearDiffusion)->Arg(128)->Arg(1024);

void BM_ChemotacticFlux(benchmark::State& state) {
    const Grid g = Grid::line(1.0, static_cast<int>(state.range(0)));
    const Field u = random_field(g, 3);
    const Field v = random_field(g, 4);
    Field scratch(g), out(g);
    for (auto _ : state) {
        div_chemotactic_flux_into(u, v, 0.25, 1.0, scratch, out);
        benchmark::DoNotOptimize(out.values.data());
    }
    state.SetItemsProcessed(state.iterations() * g.cell_count());
}
BENCHMARK(BM_ChemotacticFlux)->Arg(128)->Arg(1024);

void BM_ScreenedSolve1D(benchmark::State& state) {
    const Grid g = Grid::line(1.0, static_cast<int>(state.range(0)));
    ScreenedPoissonSolver solver(g);
    solver.set_coefficients(1.0, 2.0);
    const Field rhs = random_field(g, 5);
    Field x(g);
    for (auto _ : state) {
        solver.solve(rhs, x, 1e-12, 100);
        benchmark::DoNotOptimize(x.values.data());
    }
}
BENCHMARK(BM_ScreenedSolve1D)->Arg(128)->Arg(1024);

void BM_FullStep(benchmark::State& state) {
    const Grid g = Grid::line(1.0, static_cast<int>(state.range(0)));
    ModelParams p = bench_params();
    p.tau = static_cast<int>(state.range(1));
    StepControl control;
    control.t_end = 1e9;

    State s;
    s.u = random_field(g, 6, 0.3, 0.9);
    s.v = random_field(g, 7, 0.1, 0.5);
    TimeStepper stepper(g, p, control);
    for (auto _ : state) {
        stepper.step(s);
        benchmark::DoNotOptimize(s.u.values.data());
    }
    state.SetItemsProcessed(state.iterations() * g.cell_count());
}
BENCHMARK(BM_FullStep)->Args({128, 1})->Args({128, 0})->Args({256, 1});

}  // namespace

BENCHMARK_MAIN();
