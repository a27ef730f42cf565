#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "bb84sec/bb84sec.hpp"

using namespace bb84sec;

namespace {

std::vector<double> make_omegas(std::size_t n) {
    std::mt19937_64 rng(17);
    std::vector<double> omegas(n);
    for (double& w : omegas) w = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return omegas;
}

AttackChain make_chain(std::size_t n) {
    return AttackChain(make_omegas(n),
                       std::vector<double>(n + 1, 1.0 / static_cast<double>(n + 1)));
}

void bm_binary_entropy(benchmark::State& state) {
    double x = 0.11;
    for (auto _ : state) {
        benchmark::DoNotOptimize(binary_entropy(x));
    }
}
BENCHMARK(bm_binary_entropy);

void bm_bob_agreement(benchmark::State& state) {
    const auto omegas = make_omegas(static_cast<std::size_t>(state.range(0)));
    const ChannelNoise channel(0.1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bob_agreement(channel, omegas));
    }
}
BENCHMARK(bm_bob_agreement)->Arg(1)->Arg(4)->Arg(16)->Arg(64);

void bm_eve_agreement_last(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const AttackChain chain = make_chain(n);
    const ChannelNoise channel(0.1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(eve_agreement(n, channel, chain));
    }
}
BENCHMARK(bm_eve_agreement_last)->Arg(1)->Arg(4)->Arg(16)->Arg(64);

void bm_eve_agreement_bruteforce(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const AttackChain chain = make_chain(n);
    const ChannelNoise channel(0.1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(eve_agreement_bruteforce(n, channel, chain));
    }
}
BENCHMARK(bm_eve_agreement_bruteforce)->Arg(4)->Arg(10)->Arg(16);

void bm_assess(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const AttackChain chain = make_chain(n);
    const ChannelNoise channel(0.1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(assess(channel, chain));
    }
}
BENCHMARK(bm_assess)->Arg(1)->Arg(4)->Arg(16);

void bm_critical_omega(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const QRule rule = QRule::uniform();
    for (auto _ : state) {
        benchmark::DoNotOptimize(critical_omega(0.05, n, rule));
    }
}
BENCHMARK(bm_critical_omega)->Arg(1)->Arg(3);

void bm_critical_noise_no_attack(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(critical_noise_no_attack());
    }
}
BENCHMARK(bm_critical_noise_no_attack);

}  // namespace

BENCHMARK_MAIN();
