#pragma once

#include <cstddef>
#include <vector>

namespace mlsbm {

// Bhattacharyya-type affinity of two Bernoulli laws:
//   rho(p,q) = sqrt(p q) + sqrt((1-p)(1-q)),  rho in (0,1], rho = 1 iff p = q.
double bernoulli_affinity(double p, double q);

// Renyi divergence of order 1/2 between Bernoulli(p) and Bernoulli(q):
//   -2 log rho(p,q). Symmetric, zero iff p = q, +inf when the supports are
// disjoint point masses.
double renyi_half(double p, double q);

// Layerwise sum of renyi_half over aligned (p_t, q_t) vectors.
double aggregate_divergence(const std::vector<double>& p, const std::vector<double>& q);

// Sparse-regime first-order value of renyi_half(a rho, b rho) in the density
// rho: (sqrt(a) - sqrt(b))^2 rho. The scaled probabilities a rho and b rho
// must be valid Bernoulli parameters.
double sparse_approximation(double a, double b, double rho);

enum class RecoveryRegime { kExact, kAlmostExact, kUndetermined };

// Classifies the signal level for N nodes given the aggregate divergence:
// exact when it clears (2 + delta) log(N) / N, almost-exact when N times it
// clears almost_exact_threshold, undetermined below both.
RecoveryRegime recovery_regime(int num_nodes, double aggregate, double delta,
                               double almost_exact_threshold = 10.0);

}  // namespace mlsbm
