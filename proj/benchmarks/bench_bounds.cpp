#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "mlsbm/bounds.hpp"
#include "mlsbm/generator.hpp"

using namespace mlsbm;

namespace {

void BM_exact_posterior(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g =
      sample_network(planted_bisection(n), ConnectivityParams::shared(2, 0.9, 0.1, 2), 11);
  const std::vector<double> p(2, 0.9), q(2, 0.1);
  for (auto _ : state) {
    ExactPosterior post(g, p, q);
    benchmark::DoNotOptimize(post.probability(std::uint32_t{0}));
  }
  state.SetLabel("2^" + std::to_string(n) + " labellings");
}
BENCHMARK(BM_exact_posterior)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMicrosecond);

void BM_empirical_err(benchmark::State& state) {
  const auto z = planted_bisection(8);
  const std::vector<double> p(2, 0.9), q(2, 0.1);
  for (auto _ : state) {
    auto est = empirical_err(z, p, q, 0, 100, 3);
    benchmark::DoNotOptimize(est.mean);
  }
  state.SetLabel("100 replicates");
}
BENCHMARK(BM_empirical_err)->Unit(benchmark::kMillisecond);

void BM_err_bound_direct(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const double aggregate = 3.0 * std::log(n) / n;
  for (auto _ : state) benchmark::DoNotOptimize(err_bound_direct(n, aggregate, 0).value);
}
BENCHMARK(BM_err_bound_direct)->Arg(1000)->Arg(100000)->Arg(10000000);

void BM_exact_recovery_bound(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(exact_recovery_bound(1000000, 4.2e-5).value);
}
BENCHMARK(BM_exact_recovery_bound);

}  // namespace

BENCHMARK_MAIN();
