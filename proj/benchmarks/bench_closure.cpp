// Cost of the bounded closure search as depth and generator count grow.
#include <benchmark/benchmark.h>

#include "tcw/analysis.hpp"

namespace {

using namespace tcw;

std::vector<GeneratorPtr> small_catalogue() {
  std::vector<GeneratorPtr> generators;
  for (int n = 2; n <= 3; ++n)
    for (int e = 0; e <= n; ++e)
      generators.push_back(make_generator(ExcludedLayerFunction(n, e, n - e)));
  return generators;
}

void BM_ClosureByDepth(benchmark::State& state) {
  const std::vector<GeneratorPtr> generators = small_catalogue();
  const ClosureLimits limits = {
      .arity_cap = 4,
      .depth_cap = static_cast<int>(state.range(0)),
      .node_budget = 1'000'000,
  };
  for (auto _ : state) {
    const ClosureIndex index = closure_bfs(generators, limits);
    benchmark::DoNotOptimize(index.entries.size());
    state.counters["entries"] = static_cast<double>(index.entries.size());
    state.counters["candidates"] =
        static_cast<double>(index.candidates_evaluated);
  }
}
BENCHMARK(BM_ClosureByDepth)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_CongruenceLookup(benchmark::State& state) {
  const ClosureIndex index =
      closure_bfs(small_catalogue(), {.arity_cap = 4, .depth_cap = 2});
  const TernaryFunction probe =
      to_truth_table(ExcludedLayerFunction(3, 1, 2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(index.find_congruent(probe));
  }
  state.counters["entries"] = static_cast<double>(index.entries.size());
}
BENCHMARK(BM_CongruenceLookup)->Unit(benchmark::kMicrosecond);

void BM_RandomizedClosureCheck(benchmark::State& state) {
  for (auto _ : state) {
    const RClosureCheck check =
        verify_r_closed(static_cast<int>(state.range(0)), 4, 3, 7);
    benchmark::DoNotOptimize(check.violations);
  }
}
BENCHMARK(BM_RandomizedClosureCheck)->Arg(10)->Arg(100)
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
