#include <benchmark/benchmark.h>

#include <vector>

#include "frontier/estimators.hpp"
#include "frontier/frontier_spec.hpp"
#include "frontier/oracles.hpp"
#include "frontier/point_process.hpp"
#include "frontier/rng.hpp"

using namespace frontier;

static void BM_SimulateCellStats(benchmark::State& state) {
  const auto f = parse_frontier("affine:1,0.5");
  const PartitionConfig part(state.range(0), 4, 4);
  const auto oracles = cell_oracles(f, part);
  std::uint64_t stream = 0;
  for (auto _ : state) {
    auto stats = simulate_cell_stats(f, 1.0, 1, stream++, part, oracles);
    benchmark::DoNotOptimize(haar_ev_estimate(stats, part));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateCellStats)->Arg(1 << 12)->Arg(1 << 16);

static void BM_CellMaxLawMoments(benchmark::State& state) {
  const auto f = parse_frontier("sine:1,0.25");
  const PartitionConfig part(10000, 4, 4);
  for (auto _ : state) {
    CellMaxLaw law(f, part, 7, 1.0);
    benchmark::DoNotOptimize(law.moments());
  }
}
BENCHMARK(BM_CellMaxLawMoments);

static void BM_KsStatistic(benchmark::State& state) {
  Philox4x64 g(3, 0);
  std::vector<double> xs(static_cast<std::size_t>(state.range(0)));
  for (auto& x : xs) x = g.uniform();
  const LimitLaw law{LimitLawKind::std_normal};
  for (auto _ : state) benchmark::DoNotOptimize(ks_statistic(xs, law));
}
BENCHMARK(BM_KsStatistic)->Arg(5000);
BENCHMARK_MAIN();
