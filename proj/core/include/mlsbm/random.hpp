#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace mlsbm {

std::uint64_t splitmix64(std::uint64_t x);

// Deterministic child seed: folds the stream ids into the master seed one
// splitmix64 step at a time, so distinct id vectors give independent streams.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> ids);

/// All random draws in the project go through this wrapper so that results
/// depend only on the seed, never on the standard library's unspecified
/// distribution algorithms.
class RandomEngine {
 public:
  explicit RandomEngine(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on [0,1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi);
  // Uniform integer in {0,...,n-1}.
  std::uint64_t uniform_int(std::uint64_t n);

  bool bernoulli(double p);
  double normal();                       // standard normal, Marsaglia polar
  double gamma(double shape);            // unit scale, shape > 0
  double beta(double a, double b);
  std::vector<double> dirichlet(const std::vector<double>& alpha);

  // Index draw from unnormalized log weights. Weights of -inf have mass zero.
  int categorical_log(std::span<const double> log_weights);

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Exponentiates log weights in place after subtracting the max and normalizes
// them to sum to 1. Returns false when every weight is -inf (vector is left
// untouched).
bool normalize_log_weights(std::vector<double>& log_weights);

// Sum by recursive pairwise halving: the result is independent of any thread
// partitioning of the input and more accurate than a left fold.
double pairwise_sum(std::span<const double> xs);

}  // namespace mlsbm
