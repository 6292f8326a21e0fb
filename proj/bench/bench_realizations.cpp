#include <benchmark/benchmark.h>

#include "wealthnet/config.hpp"
#include "wealthnet/exchange.hpp"
#include "wealthnet/experiment.hpp"
#include "wealthnet/netgen.hpp"

using namespace wealthnet;

namespace {

SimConfig bench_config(std::int64_t k_max)
{
    SimConfig c;
    c.n = 500;
    c.mcs_budget = 200000;
    c.realizations = 8;
    c.stride = 0;
    if (k_max > 0) {
        c.network.fully_connected = false;
        c.network.k_max = static_cast<std::uint32_t>(k_max);
    }
    return c;
}

void BM_RealizationsSerial(benchmark::State& state)
{
    const auto c = bench_config(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(run_realizations_serial(c));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.mcs_budget * c.realizations));
}

void BM_RealizationsParallel(benchmark::State& state)
{
    const auto c = bench_config(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(run_realizations_parallel(c));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.mcs_budget * c.realizations));
}

void BM_Step(benchmark::State& state)
{
    const auto rule = state.range(0) == 0 ? ExchangeRule::additive(20) : ExchangeRule::multiplicative(0.2);
    const auto topo = Topology::fully_connected(500);
    PopulationState pop(500, 100, rule);
    Engine rng(7);
    for (auto _ : state)
        benchmark::DoNotOptimize(step(pop, topo, rule, rng));
    state.SetItemsProcessed(state.iterations());
}

void BM_Wire(benchmark::State& state)
{
    Engine rng(11);
    for (auto _ : state) {
        auto seq = sample_degree_sequence(5000, static_cast<std::uint32_t>(state.range(0)), rng);
        benchmark::DoNotOptimize(wire_network(seq, rng));
    }
}

}  // namespace

// 0 = fully connected, otherwise k_max
BENCHMARK(BM_RealizationsSerial)->Arg(0)->Arg(2)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RealizationsParallel)->Arg(0)->Arg(2)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Step)->Arg(0)->Arg(1);
BENCHMARK(BM_Wire)->Arg(2)->Arg(20)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
