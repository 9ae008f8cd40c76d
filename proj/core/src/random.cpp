#include "mlsbm/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mlsbm {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> ids) {
  std::uint64_t s = splitmix64(master);
  for (std::uint64_t id : ids) s = splitmix64(s ^ id);
  return s;
}

double RandomEngine::uniform() {
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double RandomEngine::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

std::uint64_t RandomEngine::uniform_int(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_int: n must be positive");
  // rejection sampling over the largest multiple of n below 2^64
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % n);
  std::uint64_t x;
  do {
    x = gen_();
  } while (x >= limit && limit != 0);
  return x % n;
}

bool RandomEngine::bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("bernoulli: p outside [0,1]");
  return uniform() < p;
}

double RandomEngine::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double m = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * m;
  have_spare_ = true;
  return u * m;
}

double RandomEngine::gamma(double shape) {
  if (!(shape > 0.0)) throw std::invalid_argument("gamma: shape must be positive");
  // Marsaglia-Tsang squeeze; shapes below 1 are boosted via G(a) = G(a+1) U^{1/a}.
  if (shape < 1.0) {
    const double u = uniform();
    return gamma(shape + 1.0) * std::pow(u > 0.0 ? u : std::numeric_limits<double>::min(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double RandomEngine::beta(double a, double b) {
  const double ga = gamma(a);
  const double gb = gamma(b);
  const double s = ga + gb;
  if (s == 0.0) return 0.5;  // both shapes tiny: numerically degenerate draw
  return ga / s;
}

std::vector<double> RandomEngine::dirichlet(const std::vector<double>& alpha) {
  if (alpha.empty()) throw std::invalid_argument("dirichlet: empty parameter vector");
  std::vector<double> out(alpha.size());
  double s = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    out[i] = gamma(alpha[i]);
    s += out[i];
  }
  if (s == 0.0) {
    std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(out.size()));
    return out;
  }
  for (double& v : out) v /= s;
  return out;
}

int RandomEngine::categorical_log(std::span<const double> log_weights) {
  if (log_weights.empty()) throw std::invalid_argument("categorical_log: no weights");
  double mx = -std::numeric_limits<double>::infinity();
  for (double w : log_weights) mx = std::max(mx, w);
  if (!std::isfinite(mx)) throw std::invalid_argument("categorical_log: all weights are -inf");
  double total = 0.0;
  for (double w : log_weights) total += std::exp(w - mx);
  double u = uniform() * total;
  for (std::size_t i = 0; i + 1 < log_weights.size(); ++i) {
    u -= std::exp(log_weights[i] - mx);
    if (u < 0.0) return static_cast<int>(i);
  }
  return static_cast<int>(log_weights.size() - 1);
}

bool normalize_log_weights(std::vector<double>& log_weights) {
  if (log_weights.empty()) return false;
  double mx = -std::numeric_limits<double>::infinity();
  for (double w : log_weights) mx = std::max(mx, w);
  if (!std::isfinite(mx)) return false;
  double total = 0.0;
  for (double& w : log_weights) {
    w = std::exp(w - mx);
    total += w;
  }
  for (double& w : log_weights) w /= total;
  return true;
}

double pairwise_sum(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  if (xs.size() == 1) return xs[0];
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

}  // namespace mlsbm
