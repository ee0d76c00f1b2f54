#include <benchmark/benchmark.h>

#include "aqw/entanglement.hpp"

using namespace aqw;

namespace {

WalkerState key_state(const EvolutionSpec& spec) {
    return evolve(initial_state(0, 0, {kPi / 2, kPi}, spec.steps + 1), spec);
}

}  // namespace

static void BM_PiTangle(benchmark::State& state) {
    const auto s = key_state(EvolutionSpec::m1(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(entanglement_report(s).pi_tangle);
}
BENCHMARK(BM_PiTangle)->Arg(2)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_PositionNegativity(benchmark::State& state) {
    const auto s = key_state(EvolutionSpec::g1(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(position_negativity(s));
}
BENCHMARK(BM_PositionNegativity)->Arg(2)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_DensityOccupied(benchmark::State& state) {
    const auto s = key_state(EvolutionSpec::m1(static_cast<int>(state.range(0))));
    const auto basis = SupportBasis::occupied(s);
    for (auto _ : state) benchmark::DoNotOptimize(to_density(s, basis));
}
BENCHMARK(BM_DensityOccupied)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);
