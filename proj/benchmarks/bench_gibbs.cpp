#include <benchmark/benchmark.h>

#include "mlsbm/generator.hpp"
#include "mlsbm/gibbs.hpp"

using namespace mlsbm;

namespace {

MultilayerGraph make_graph(int n, int layers) {
  return sample_network(planted_bisection(n), ConnectivityParams::shared(2, 0.3, 0.2, layers), 9);
}

void BM_sweep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int layers = static_cast<int>(state.range(1));
  const auto g = make_graph(n, layers);
  GibbsChain chain(g, PriorConfig{{200.0, 200.0}}, 3);
  for (auto _ : state) {
    chain.step();
    benchmark::DoNotOptimize(chain.labels().data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_sweep)
    ->ArgsProduct({{50, 100, 200, 400}, {1, 7}})
    ->Unit(benchmark::kMicrosecond);

void BM_sufficient_stats(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = make_graph(n, 3);
  const auto z = planted_bisection(n);
  for (auto _ : state) {
    auto s = sufficient_stats(z, g);
    benchmark::DoNotOptimize(s.total_links.data());
  }
}
BENCHMARK(BM_sufficient_stats)->Arg(100)->Arg(400)->Unit(benchmark::kMicrosecond);

void BM_full_chain(benchmark::State& state) {
  const auto g = make_graph(100, 5);
  for (auto _ : state) {
    auto trace = run_chain(g, PriorConfig{{200.0, 200.0}}, 110, 100, 5);
    benchmark::DoNotOptimize(trace.states.data());
  }
  state.SetLabel("110 sweeps, N=100, T=5");
}
BENCHMARK(BM_full_chain)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
