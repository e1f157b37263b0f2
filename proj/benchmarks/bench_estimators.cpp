#include <benchmark/benchmark.h>

#include "stablefit/stablefit.hpp"

using namespace stablefit;

namespace {

Sample make_sample(double alpha, std::size_t n) {
    StableSampler sampler(StableParams(alpha, 1.0), 7, 0);
    return sampler.draw(n);
}

}  // namespace

static void BM_EcfOnGrid(benchmark::State& state) {
    const Sample sample = make_sample(1.5, static_cast<std::size_t>(state.range(0)));
    const TGrid grid(0.1, 1.9, static_cast<int>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(z_on_grid(sample, grid));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * (state.range(1) + 1));
}
BENCHMARK(BM_EcfOnGrid)->Args({30, 500})->Args({100, 500})->Args({200, 500})->Args({100, 2000});

static void BM_FitInfiniteLs(benchmark::State& state) {
    const Sample sample = make_sample(1.5, static_cast<std::size_t>(state.range(0)));
    const IntervalDesign design(0.1, 1.9);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_infinite_ls(sample, design, 500));
    }
}
BENCHMARK(BM_FitInfiniteLs)->Arg(30)->Arg(100)->Arg(200);

static void BM_FitKogonWilliams(benchmark::State& state) {
    const Sample sample = make_sample(1.5, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_kogon_williams(sample));
    }
}
BENCHMARK(BM_FitKogonWilliams)->Arg(30)->Arg(100)->Arg(200);

static void BM_DrawStable(benchmark::State& state) {
    StableSampler sampler(StableParams(1.5, 1.0), 11, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sampler.next());
    }
}
BENCHMARK(BM_DrawStable);

static void BM_LogDesign(benchmark::State& state) {
    const IntervalDesign design(0.1, 1.9);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_log_design(design));
    }
}
BENCHMARK(BM_LogDesign);

BENCHMARK_MAIN();
