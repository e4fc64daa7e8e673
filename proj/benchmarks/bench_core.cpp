#include <benchmark/benchmark.h>

#include "adns/spectral_ops.hpp"
#include "adns/stepper.hpp"

namespace {

adns::SolverConfig bench_config(int n) {
    adns::SolverConfig cfg;
    cfg.grid = adns::Grid::make(n, n);
    cfg.lambda = 5.0;
    cfg.dt = 1e-3;
    cfg.t_final = 1.0;
    cfg.sigma = adns::NoiseOperator::decay_family(cfg.grid, 4, 1.0, 0.1);
    cfg.init = {adns::InitSpec::Kind::random_divfree, 3.0, 1.0, 0.0, 0, ""};
    return cfg;
}

void BM_NonlinearTerm(benchmark::State& state) {
    const adns::Grid grid = adns::Grid::make((int)state.range(0), (int)state.range(0));
    const adns::SpectralVelocity u = adns::random_divfree_field(grid, 1, 3.0, 1.0);
    for (auto _ : state) {
        adns::SpectralVelocity w = adns::nonlinear_term(u, u);
        benchmark::DoNotOptimize(w);
    }
}
BENCHMARK(BM_NonlinearTerm)->Arg(32)->Arg(64)->Arg(128);

void BM_Step(benchmark::State& state) {
    adns::StepEngine engine(bench_config((int)state.range(0)), 0);
    for (auto _ : state) engine.advance();
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Step)->Arg(32)->Arg(64);

void BM_NormSnapshot(benchmark::State& state) {
    const adns::Grid grid = adns::Grid::make((int)state.range(0), (int)state.range(0));
    const adns::SpectralVelocity u = adns::random_divfree_field(grid, 1, 3.0, 1.0);
    for (auto _ : state) {
        adns::NormSnapshot s = adns::norm_snapshot(u);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_NormSnapshot)->Arg(32)->Arg(64);

void BM_LerayProject(benchmark::State& state) {
    const adns::Grid grid = adns::Grid::make((int)state.range(0), (int)state.range(0));
    const adns::SpectralVelocity u = adns::random_divfree_field(grid, 1, 2.0, 1.0);
    for (auto _ : state) {
        adns::SpectralVelocity w = adns::leray_project(u);
        benchmark::DoNotOptimize(w);
    }
}
BENCHMARK(BM_LerayProject)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
