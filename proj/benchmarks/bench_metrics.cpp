#include <benchmark/benchmark.h>

#include <vector>

#include "mlsbm/dahl.hpp"
#include "mlsbm/partition_metrics.hpp"
#include "mlsbm/random.hpp"

using namespace mlsbm;

namespace {

BlockAssignment random_labels(RandomEngine& rng, int n, int k) {
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (auto& v : labels) v = 1 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(k)));
  return BlockAssignment(labels, k);
}

void BM_pair_counts(benchmark::State& state) {
  RandomEngine rng(4);
  const int n = static_cast<int>(state.range(0));
  const auto a = random_labels(rng, n, 2);
  const auto b = random_labels(rng, n, 2);
  for (auto _ : state) {
    auto c = pair_counts(a, b);
    benchmark::DoNotOptimize(c.m11);
  }
}
BENCHMARK(BM_pair_counts)->Arg(100)->Arg(10000)->Arg(1000000);

void BM_adjusted_rand(benchmark::State& state) {
  RandomEngine rng(5);
  const int n = static_cast<int>(state.range(0));
  const auto a = random_labels(rng, n, 4);
  const auto b = random_labels(rng, n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(adjusted_rand(a, b));
}
BENCHMARK(BM_adjusted_rand)->Arg(10000)->Arg(1000000);

void BM_ace_eight_blocks(benchmark::State& state) {
  RandomEngine rng(6);
  const auto a = random_labels(rng, static_cast<int>(state.range(0)), 8);
  const auto b = random_labels(rng, static_cast<int>(state.range(0)), 8);
  for (auto _ : state) benchmark::DoNotOptimize(ace_distance(a, b));
  state.SetLabel("8! relabellings");
}
BENCHMARK(BM_ace_eight_blocks)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_dahl_estimate(benchmark::State& state) {
  RandomEngine rng(7);
  const int n = 100, retained = static_cast<int>(state.range(0));
  ChainTrace trace;
  trace.num_nodes = n;
  trace.num_communities = 2;
  trace.total_iterations = retained;
  for (int s = 0; s < retained; ++s) trace.states.push_back(random_labels(rng, n, 2).labels());
  for (auto _ : state) {
    auto est = dahl_estimate(trace);
    benchmark::DoNotOptimize(est.labels().data());
  }
}
BENCHMARK(BM_dahl_estimate)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
