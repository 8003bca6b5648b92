#include <benchmark/benchmark.h>

#include <random>

#include "sgc/bounds.hpp"
#include "sgc/components.hpp"
#include "sgc/fmatrix.hpp"
#include "sgc/oracle.hpp"
#include "sgc/synth.hpp"

using namespace sgc;

namespace {

KeyConfig two_of_four_example() {
  return KeyConfig(4, ReceiverSet{1, 2},
                   {{{1}, 1}, {{2}, 2}, {{1, 3}, 2}, {{1, 4}, 3}, {{2, 3}, 1}, {{2, 4}, 2}, {{1, 2, 3}, 2},
                    {{1, 2, 4}, 1}});
}

KeyConfig symmetric(int k, int n, Symbols size) {
  std::map<ReceiverSet, Symbols> keys;
  for (auto u : nonempty_subsets(ReceiverSet::range(k)))
    if (u.size() == n) keys[u] = size;
  return KeyConfig(k, ReceiverSet::range(n), keys);
}

void BM_Rank(benchmark::State& state) {
  const PrimeField f(static_cast<std::uint64_t>(state.range(0)));
  const auto n = static_cast<std::size_t>(state.range(1));
  std::mt19937_64 rng(1);
  const FMatrix m = random_matrix(n, n, f, rng);
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_Rank)->ArgsProduct({{2, 3, 65521}, {16, 64, 256}});

void BM_Cauchy(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PrimeField f(least_prime_at_least(2 * n));
  for (auto _ : state) benchmark::DoNotOptimize(cauchy(n, n, f));
}
BENCHMARK(BM_Cauchy)->Arg(16)->Arg(64);

void BM_OracleTwoOfFour(benchmark::State& state) {
  const LinearScheme s = synth_groupcast_2of4(two_of_four_example()).scheme;
  for (auto _ : state) benchmark::DoNotOptimize(oracle_verify(s));
  state.counters["states"] = static_cast<double>(oracle_states(s));
}
BENCHMARK(BM_OracleTwoOfFour)->Unit(benchmark::kMillisecond);

void BM_OracleAlignment(benchmark::State& state) {
  const LinearScheme s = synth_instance_2of5(1).scheme;
  for (auto _ : state) benchmark::DoNotOptimize(oracle_verify(s));
}
BENCHMARK(BM_OracleAlignment)->Unit(benchmark::kMillisecond);

void BM_VerifyAlgebraic(benchmark::State& state) {
  const LinearScheme s = synth_symmetric(symmetric(static_cast<int>(state.range(0)), 3, 1)).scheme;
  for (auto _ : state) benchmark::DoNotOptimize(verify(s));
}
BENCHMARK(BM_VerifyAlgebraic)->Arg(6)->Arg(7);

void BM_SynthTwoOfFour(benchmark::State& state) {
  const KeyConfig c = two_of_four_example().scaled(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(c));
}
BENCHMARK(BM_SynthTwoOfFour)->Arg(1)->Arg(4);

void BM_SynthSymmetric(benchmark::State& state) {
  const KeyConfig c = symmetric(static_cast<int>(state.range(0)), 3, 1);
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(c));
}
BENCHMARK(BM_SynthSymmetric)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_BandwidthConverse(benchmark::State& state) {
  const KeyConfig c = symmetric(static_cast<int>(state.range(0)), 3, 1);
  const Rational rate = exact_capacity(c)->capacity;
  for (auto _ : state) benchmark::DoNotOptimize(bw_converse(c, rate));
}
BENCHMARK(BM_BandwidthConverse)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_PlanTwoOfFour(benchmark::State& state) {
  TwoOfFourSizes s{1, 2, 0, 2, 3, 1, 2, 2, 1};
  for (auto _ : state) benchmark::DoNotOptimize(plan_2of4(s));
}
BENCHMARK(BM_PlanTwoOfFour);

}  // namespace

BENCHMARK_MAIN();
