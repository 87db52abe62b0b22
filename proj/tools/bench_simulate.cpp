#include <benchmark/benchmark.h>

#include "searchmkt/equilibrium.hpp"
#include "searchmkt/oracle.hpp"

namespace {

using namespace searchmkt;

const market_config& bench_config() {
    static const market_config cfg{3, 1.0, 0.05, {0.0, 0.0, 0.9, 0.1}};
    return cfg;
}

const equilibrium& bench_equilibrium() {
    static const equilibrium eq = stable_small_c(bench_config());
    return eq;
}

void bm_simulate_serial(benchmark::State& state) {
    const auto& cfg = bench_config();
    const auto& eq = bench_equilibrium();
    const auto trials = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        const mc_report rep = simulate_serial(cfg, {eq.k, eq.q}, eq.laws, trials, 42);
        benchmark::DoNotOptimize(rep.price_paid.mean);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(trials) * state.iterations());
}

void bm_simulate_parallel(benchmark::State& state) {
    const auto& cfg = bench_config();
    const auto& eq = bench_equilibrium();
    const auto trials = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        const mc_report rep = simulate(cfg, {eq.k, eq.q}, eq.laws, trials, 42);
        benchmark::DoNotOptimize(rep.price_paid.mean);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(trials) * state.iterations());
}

}  // namespace

BENCHMARK(bm_simulate_serial)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_simulate_parallel)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
