#include <benchmark/benchmark.h>

#include <random>

#include "revca/automaton.hpp"
#include "revca/constructions.hpp"
#include "revca/mcm.hpp"
#include "revca/reverse.hpp"
#include "revca/valc.hpp"
#include "revca/witnesses.hpp"

using namespace revca;

static void BM_RunEqAb(benchmark::State& state) {
  const auto m = build_eq_ab();
  std::mt19937_64 rng(1);
  Word w(static_cast<std::size_t>(state.range(0)));
  for (auto& s : w) s = kFirstLetter + static_cast<Symbol>(rng() & 1);
  for (auto _ : state) benchmark::DoNotOptimize(run(m, w, w.size() + 2).steps);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunEqAb)->Range(64, 1 << 16);

static void BM_SweepEqAb(benchmark::State& state) {
  const auto m = build_eq_ab();
  for (auto _ : state) {
    std::size_t accepted = 0;
    for_each_word(2, static_cast<std::size_t>(state.range(0)), [&](const Word& w) {
      accepted += run(m, w, w.size() + 2).verdict == Verdict::kAccept;
      return true;
    });
    benchmark::DoNotOptimize(accepted);
  }
}
BENCHMARK(BM_SweepEqAb)->DenseRange(8, 14, 2);

static void BM_DeriveReverseBalanced(benchmark::State& state) {
  const auto m = build_balanced(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(derive_reverse(m).reversible);
}
BENCHMARK(BM_DeriveReverseBalanced)->DenseRange(2, 6);

static void BM_SpeedupValcPart(benchmark::State& state) {
  const auto q = build_valc_part_quasi(mcm_example_machine(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(speedup(q, kValcStationaryBudget).automaton.num_states());
}
BENCHMARK(BM_SpeedupValcPart)->Unit(benchmark::kMillisecond);

static void BM_BuildValc(benchmark::State& state) {
  const auto m = mcm_example_machine();
  for (auto _ : state) benchmark::DoNotOptimize(build_valc(m).num_states());
}
BENCHMARK(BM_BuildValc)->Unit(benchmark::kMillisecond);

static void BM_McmRun(benchmark::State& state) {
  const auto m = mcm_example_machine();
  for (auto _ : state) benchmark::DoNotOptimize(mcm_run(m, static_cast<std::size_t>(state.range(0)), 100).configs.size());
}
BENCHMARK(BM_McmRun)->RangeMultiplier(4)->Range(4, 4096);
BENCHMARK_MAIN();
