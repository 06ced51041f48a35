// Threaded kernels against their serial reference implementations.

#include <benchmark/benchmark.h>

#include <random>

#include "greensfn/greens.hpp"

using namespace greensfn;

namespace {

RealKernel random_kernel(int n) {
    const GridPtr g = make_grid(0.0, 1.0, n);
    std::mt19937 rng(42u);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    RealKernel k(g);
    for (std::size_t i = 0; i < k.dim(); ++i)
        for (std::size_t j = 0; j <= i; ++j) k(i, j) = u(rng);
    return k;
}

void bm_compose_parallel(benchmark::State& state) {
    const RealKernel k = random_kernel(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(kernel_compose(k, k));
}

void bm_compose_serial(benchmark::State& state) {
    const RealKernel k = random_kernel(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(serial::kernel_compose(k, k));
}

void bm_resolvent_parallel(benchmark::State& state) {
    const GridPtr g = make_grid(0.0, 1.0, static_cast<int>(state.range(0)));
    const auto k = RealKernel::from_function(g, [](double x, double y) { return 4.0 * (x - y); });
    for (auto _ : state) benchmark::DoNotOptimize(resolvent_direct(k));
}

void bm_resolvent_serial(benchmark::State& state) {
    const GridPtr g = make_grid(0.0, 1.0, static_cast<int>(state.range(0)));
    const auto k = RealKernel::from_function(g, [](double x, double y) { return 4.0 * (x - y); });
    for (auto _ : state) benchmark::DoNotOptimize(serial::resolvent_direct(k));
}

void bm_build_greens(benchmark::State& state) {
    const GridPtr g = make_grid(0.0, 1.0, static_cast<int>(state.range(0)));
    const auto op = DifferentialOperator::constant({-4.0, 0.0});
    for (auto _ : state) benchmark::DoNotOptimize(causal_greens(op, g));
}

} // namespace

BENCHMARK(bm_compose_serial)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_compose_parallel)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_resolvent_serial)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_resolvent_parallel)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_build_greens)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
