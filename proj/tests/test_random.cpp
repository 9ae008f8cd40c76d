#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "mlsbm/random.hpp"

using namespace mlsbm;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("seed derivation is deterministic and order sensitive") {
  CHECK(derive_seed(1, {2, 3}) == derive_seed(1, {2, 3}));
  CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
  CHECK(derive_seed(1, {2}) != derive_seed(2, {2}));
  CHECK(derive_seed(1, {}) != derive_seed(1, {0}));
  CHECK(splitmix64(0) != splitmix64(1));
}

TEST_CASE("engines with equal seeds replay the same stream") {
  RandomEngine a(42), b(42), c(43);
  bool diverged = false;
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(0.0 <= x);
    CHECK(x < 1.0);
    if (x != c.uniform()) diverged = true;
  }
  CHECK(diverged);
}

TEST_CASE("bounded uniform and integer draws stay in range") {
  RandomEngine rng(7);
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.uniform(-2.0, 3.0);
    CHECK(-2.0 <= x);
    CHECK(x < 3.0);
    CHECK(rng.uniform_int(5) < 5);
  }
  CHECK(rng.uniform_int(1) == 0);
}

TEST_CASE("uniform integers cover all residues evenly") {
  RandomEngine rng(11);
  const int n = 6, reps = 60000;
  std::vector<int> counts(n, 0);
  for (int i = 0; i < reps; ++i) ++counts[rng.uniform_int(n)];
  for (int c : counts) {
    // each bin is Binomial(reps, 1/6); 5 sigma ~ 456
    CHECK(std::abs(c - reps / n) < 500);
  }
}

TEST_CASE("moment checks for the continuous distributions") {
  RandomEngine rng(2024);
  const int reps = 200000;

  double sum = 0, sumsq = 0;
  for (int i = 0; i < reps; ++i) {
    const double x = rng.normal();
    sum += x;
    sumsq += x * x;
  }
  CHECK(std::abs(sum / reps) < 1e-2);
  CHECK(sumsq / reps == doctest::Approx(1.0).epsilon(2e-2));

  for (const double shape : {0.3, 1.0, 2.5, 9.0}) {
    double s = 0;
    for (int i = 0; i < reps; ++i) {
      const double x = rng.gamma(shape);
      CHECK(x > 0.0);
      s += x;
    }
    CHECK(s / reps == doctest::Approx(shape).epsilon(3e-2));
  }

  double bsum = 0;
  for (int i = 0; i < reps; ++i) {
    const double x = rng.beta(2.0, 3.0);
    CHECK(0.0 <= x);
    CHECK(x <= 1.0);
    bsum += x;
  }
  CHECK(bsum / reps == doctest::Approx(0.4).epsilon(2e-2));
}

TEST_CASE("gamma rejects nonpositive shape") {
  RandomEngine rng(1);
  CHECK_THROWS_AS(rng.gamma(0.0), std::invalid_argument);
  CHECK_THROWS_AS(rng.gamma(-1.0), std::invalid_argument);
}

TEST_CASE("dirichlet draws live on the simplex with the right mean") {
  RandomEngine rng(9);
  const std::vector<double> alpha{2.0, 5.0, 3.0};
  const int reps = 50000;
  std::vector<double> mean(3, 0.0);
  for (int i = 0; i < reps; ++i) {
    const auto w = rng.dirichlet(alpha);
    REQUIRE(w.size() == 3);
    CHECK(std::accumulate(w.begin(), w.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    for (int k = 0; k < 3; ++k) {
      CHECK(w[k] >= 0.0);
      mean[k] += w[k];
    }
  }
  CHECK(mean[0] / reps == doctest::Approx(0.2).epsilon(3e-2));
  CHECK(mean[1] / reps == doctest::Approx(0.5).epsilon(3e-2));
  CHECK(mean[2] / reps == doctest::Approx(0.3).epsilon(3e-2));
}

TEST_CASE("categorical draws follow the normalized log weights") {
  RandomEngine rng(31);
  // weights proportional to 1 : 2 : 4, shifted by a large constant to check
  // max subtraction
  const std::vector<double> lw{500.0, 500.0 + std::log(2.0), 500.0 + std::log(4.0)};
  const int reps = 70000;
  std::vector<int> counts(3, 0);
  for (int i = 0; i < reps; ++i) ++counts[rng.categorical_log(lw)];
  CHECK(static_cast<double>(counts[0]) / reps == doctest::Approx(1.0 / 7).epsilon(0.05));
  CHECK(static_cast<double>(counts[1]) / reps == doctest::Approx(2.0 / 7).epsilon(0.05));
  CHECK(static_cast<double>(counts[2]) / reps == doctest::Approx(4.0 / 7).epsilon(0.05));
}

TEST_CASE("categorical never selects a zero-mass index and rejects empty mass") {
  RandomEngine rng(8);
  const std::vector<double> lw{-kInf, 0.0, -kInf};
  for (int i = 0; i < 200; ++i) CHECK(rng.categorical_log(lw) == 1);
  const std::vector<double> dead{-kInf, -kInf};
  CHECK_THROWS_AS(rng.categorical_log(dead), std::invalid_argument);
}

TEST_CASE("log weight normalization handles overflow-prone inputs") {
  std::vector<double> lw{1000.0, 1000.0 + std::log(3.0)};
  REQUIRE(normalize_log_weights(lw));
  CHECK(lw[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(lw[1] == doctest::Approx(0.75).epsilon(1e-12));

  std::vector<double> partial{-kInf, 0.0};
  REQUIRE(normalize_log_weights(partial));
  CHECK(partial[0] == 0.0);
  CHECK(partial[1] == 1.0);

  std::vector<double> dead{-kInf, -kInf};
  CHECK_FALSE(normalize_log_weights(dead));
  CHECK(dead[0] == -kInf);
}

TEST_CASE("pairwise sum agrees with exact sums and ignores chunking") {
  CHECK(pairwise_sum({}) == 0.0);
  const std::vector<double> one{3.5};
  CHECK(pairwise_sum(one) == 3.5);

  RandomEngine rng(55);
  std::vector<double> xs(1001);
  for (auto& x : xs) x = rng.uniform(-1.0, 1.0);
  long double exact = 0;
  for (double x : xs) exact += static_cast<long double>(x);
  CHECK(pairwise_sum(xs) == doctest::Approx(static_cast<double>(exact)).epsilon(1e-13));

  // summing a whole span must equal summing it as one piece regardless of how
  // a caller might later partition work: the function is a pure fold of the
  // span contents
  const std::vector<double> ys(1 << 12, 0.1);
  CHECK(pairwise_sum(ys) == doctest::Approx(409.6).epsilon(1e-12));
}
