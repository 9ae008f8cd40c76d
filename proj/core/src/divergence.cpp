#include "mlsbm/divergence.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mlsbm {

namespace {
void check_prob(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(what) + ": probability outside [0,1]");
}
}  // namespace

double bernoulli_affinity(double p, double q) {
  check_prob(p, "bernoulli_affinity");
  check_prob(q, "bernoulli_affinity");
  return std::sqrt(p * q) + std::sqrt((1.0 - p) * (1.0 - q));
}

double renyi_half(double p, double q) {
  check_prob(p, "renyi_half");
  check_prob(q, "renyi_half");
  if (p == q) return 0.0;
  const double rho = bernoulli_affinity(p, q);
  if (rho <= 0.0) return std::numeric_limits<double>::infinity();
  if (rho >= 1.0) return 0.0;  // rounding can push rho a hair above 1
  return -2.0 * std::log(rho);
}

double aggregate_divergence(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("aggregate_divergence: length mismatch");
  double s = 0.0;
  for (std::size_t t = 0; t < p.size(); ++t) s += renyi_half(p[t], q[t]);
  return s;
}

double sparse_approximation(double a, double b, double rho) {
  if (!(a >= 0.0) || !(b >= 0.0))
    throw std::invalid_argument("sparse_approximation: rates must be nonnegative");
  if (!(rho > 0.0 && rho <= 1.0))
    throw std::invalid_argument("sparse_approximation: density must lie in (0,1]");
  check_prob(a * rho, "sparse_approximation");
  check_prob(b * rho, "sparse_approximation");
  const double d = std::sqrt(a) - std::sqrt(b);
  return d * d * rho;
}

RecoveryRegime recovery_regime(int num_nodes, double aggregate, double delta,
                               double almost_exact_threshold) {
  if (num_nodes < 2) throw std::invalid_argument("recovery_regime: num_nodes must be >= 2");
  if (!(aggregate >= 0.0)) throw std::invalid_argument("recovery_regime: aggregate must be >= 0");
  if (!(delta > 0.0)) throw std::invalid_argument("recovery_regime: delta must be positive");
  const double n = static_cast<double>(num_nodes);
  if (aggregate >= (2.0 + delta) * std::log(n) / n) return RecoveryRegime::kExact;
  if (n * aggregate >= almost_exact_threshold) return RecoveryRegime::kAlmostExact;
  return RecoveryRegime::kUndetermined;
}

}  // namespace mlsbm
