#include <benchmark/benchmark.h>

#include <random>

#include "bb84sec/montecarlo.hpp"

using namespace bb84sec;

namespace {

void bm_transmit_photon(benchmark::State& state) {
    const ChannelNoise channel(0.1);
    const AttackChain chain({0.8, 0.5}, {0.2, 0.5, 0.3});
    std::mt19937_64 rng(7);
    mc::TransmitRecord record;
    for (auto _ : state) {
        record = mc::transmit_photon(channel, chain, rng);
        benchmark::DoNotOptimize(record);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(bm_transmit_photon);

void bm_run_single_thread(benchmark::State& state) {
    const ChannelNoise channel(0.1);
    const AttackChain chain({0.8}, {0.5, 0.5});
    const std::uint64_t photons = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(mc::run({photons, 42, 1}, channel, chain));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(photons));
}
BENCHMARK(bm_run_single_thread)->Arg(1 << 16)->Arg(1 << 18);

void bm_run_all_threads(benchmark::State& state) {
    const ChannelNoise channel(0.1);
    const AttackChain chain({0.8}, {0.5, 0.5});
    const std::uint64_t photons = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(mc::run({photons, 42, 0}, channel, chain));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(photons));
}
BENCHMARK(bm_run_all_threads)->Arg(1 << 18)->Arg(1 << 20);

}  // namespace

BENCHMARK_MAIN();
