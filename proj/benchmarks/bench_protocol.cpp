#include <benchmark/benchmark.h>

#include "aqw/protocol.hpp"
#include "aqw/security.hpp"
#include "aqw/wire.hpp"

using namespace aqw;

namespace {

PrivateKey m1_key(int t) { return {EvolutionSpec::m1(t), 0, 0, {kPi / 2, kPi}}; }

}  // namespace

static void BM_Keygen(benchmark::State& state) {
    const auto key = m1_key(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(keygen(key, 3));
}
BENCHMARK(BM_Keygen)->Arg(2)->Arg(10)->Arg(20);

static void BM_Decrypt(benchmark::State& state) {
    const auto key = m1_key(static_cast<int>(state.range(0)));
    const auto cipher = encrypt(keygen(key, 3), {1, 2});
    for (auto _ : state) benchmark::DoNotOptimize(decrypt(cipher, key, 3));
}
BENCHMARK(BM_Decrypt)->Arg(2)->Arg(10)->Arg(20);

static void BM_InterceptEnumeration(benchmark::State& state) {
    const auto key = m1_key(2);
    for (auto _ : state)
        benchmark::DoNotOptimize(intercept_resend(key, {1, 2}, 3, AttackMethod::Enumeration));
}
BENCHMARK(BM_InterceptEnumeration)->Unit(benchmark::kMillisecond);

static void BM_MixedPublicKey(benchmark::State& state) {
    const auto spec = EvolutionSpec::m1(2);
    for (auto _ : state)
        benchmark::DoNotOptimize(explicit_mixed_public_key(static_cast<int>(state.range(0)), spec));
}
BENCHMARK(BM_MixedPublicKey)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_StateRoundTrip(benchmark::State& state) {
    const auto encoding = state.range(0) == 0 ? StateEncoding::Text : StateEncoding::Binary;
    const auto s = keygen(m1_key(10), 3).state;
    for (auto _ : state) {
        const Bytes bytes = save_state(s, encoding);
        benchmark::DoNotOptimize(load_state(bytes));
    }
}
BENCHMARK(BM_StateRoundTrip)->Arg(0)->Arg(1);
