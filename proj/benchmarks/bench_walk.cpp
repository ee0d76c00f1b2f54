#include <benchmark/benchmark.h>

#include "aqw/walker.hpp"

using namespace aqw;

static void BM_EvolveM1(benchmark::State& state) {
    const int t = static_cast<int>(state.range(0));
    const auto start = initial_state(0, 0, {kPi / 2, kPi}, t + 1);
    const auto spec = EvolutionSpec::m1(t);
    for (auto _ : state) benchmark::DoNotOptimize(evolve(start, spec));
    state.SetComplexityN(t);
}
BENCHMARK(BM_EvolveM1)->RangeMultiplier(2)->Range(2, 32)->Complexity();

static void BM_InverseRoundTrip(benchmark::State& state) {
    const int t = static_cast<int>(state.range(0));
    const auto spec = EvolutionSpec::g1(t);
    const auto pk = evolve(initial_state(0, 0, {kPi / 2, kPi}, t + 1), spec);
    for (auto _ : state) benchmark::DoNotOptimize(inverse_evolve(pk, spec));
}
BENCHMARK(BM_InverseRoundTrip)->Arg(2)->Arg(10)->Arg(20);

static void BM_Translate(benchmark::State& state) {
    const auto pk = evolve(initial_state(0, 0, {kPi / 2, kPi}, 24), EvolutionSpec::m1(20));
    for (auto _ : state) benchmark::DoNotOptimize(translate(pk, 1, 2));
}
BENCHMARK(BM_Translate);
