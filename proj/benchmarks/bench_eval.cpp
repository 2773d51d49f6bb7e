// Evaluation throughput of synthesized witnesses: the formulas share
// subterms, so sweeping even astronomically large expanded trees should cost
// time proportional to distinct nodes times points.
#include <benchmark/benchmark.h>

#include "tcw/random.hpp"
#include "tcw/synthesis.hpp"

namespace {

using namespace tcw;

void BM_WitnessFullSweep(benchmark::State& state) {
  const int generator_arity = static_cast<int>(state.range(0));
  const Witness w = synth_family_fixed_e(
      {4, 1, 3}, {generator_arity, 1, generator_arity - 1});
  const CompiledFormula compiled(w.formula);
  CompiledFormula::Scratch scratch;
  for (auto _ : state) {
    std::uint64_t acc = 0;
    for (std::uint64_t index = 0; index < 81; ++index) {
      acc += compiled.eval(TernaryTuple::from_index(index, 4).components(),
                           scratch);
    }
    benchmark::DoNotOptimize(acc);
  }
  state.counters["distinct_nodes"] =
      static_cast<double>(compiled.node_count());
  state.counters["expanded_tree"] = static_cast<double>(tree_size(w.formula));
}
BENCHMARK(BM_WitnessFullSweep)->Arg(8)->Arg(10)->Arg(12);

void BM_PipelineRealization(benchmark::State& state) {
  const int arity = static_cast<int>(state.range(0));
  Rng rng(1);
  const TernaryFunction target = random_r_function(arity, rng);
  for (auto _ : state) {
    const Witness w = synth_R_from_Sminus1(target);
    benchmark::DoNotOptimize(w.verified);
  }
}
BENCHMARK(BM_PipelineRealization)->Arg(2)->Arg(3);

void BM_CompiledVersusShared(benchmark::State& state) {
  // Baseline for the sharing argument: plain eval() walks distinct nodes per
  // call just like CompiledFormula, but rebuilds its node map each time.
  const Witness w = synth_family_fixed_e({4, 1, 3}, {8, 1, 7});
  for (auto _ : state) {
    std::uint64_t acc = 0;
    for (std::uint64_t index = 0; index < 81; ++index)
      acc += eval(w.formula, TernaryTuple::from_index(index, 4));
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_CompiledVersusShared);

}  // namespace

BENCHMARK_MAIN();
