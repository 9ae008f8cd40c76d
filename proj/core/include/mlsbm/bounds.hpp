#pragma once

#include <cstdint>
#include <vector>

#include "mlsbm/graph.hpp"

namespace mlsbm {

/// Exact two-block posterior over all 2^N labellings of a small graph, under
/// a uniform prior and known within/between link probabilities p_t, q_t. A
/// labelling is encoded as an N-bit code with bit i set when node i has label
/// 2. Capped at 16 nodes so the table stays at 65536 entries.
class ExactPosterior {
 public:
  static constexpr int kMaxNodes = 16;

  ExactPosterior(const MultilayerGraph& x, const std::vector<double>& p,
                 const std::vector<double>& q);

  int num_nodes() const { return n_; }
  double probability(std::uint32_t code) const { return probs_[code]; }
  double probability(const std::vector<int>& labels) const;

  // Posterior mass on labellings whose classification error against the
  // center exceeds the radius.
  double mass_outside(const BlockAssignment& center, int radius) const;

  // Posterior co-clustering probabilities, exact counterpart of the sampled
  // co-clustering matrix.
  Matrix coclustering() const;

 private:
  int n_;
  std::vector<double> probs_;
};

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  int replicates = 0;
  std::uint64_t seed = 0;
};

// Monte Carlo estimate of the expected posterior mass outside the radius-r
// classification-error ball around the true labelling: datasets are drawn
// from the planted model at z, each scored by the exact posterior.
// Deterministic given the seed, for any jobs value.
MonteCarloEstimate empirical_err(const BlockAssignment& z, const std::vector<double>& p,
                                 const std::vector<double>& q, int radius, int replicates,
                                 std::uint64_t seed, int jobs = 1);

// Sum over the listed labellings of exp(-aggregate * pair_disagreements / 4),
// with the pair count taken as the Mirkin distance to z. Clamped to [0,1].
// z itself must not appear in the list.
double pairwise_sum_bound(const BlockAssignment& z, const std::vector<BlockAssignment>& others,
                          double aggregate);

enum class BoundMethod { kDirectSum, kSplitEll, kPairwiseSum };

struct BoundReport {
  int num_nodes = 0;
  double aggregate = 0.0;  // layer-summed divergence the bound was evaluated at
  int radius = 0;
  double value = 0.0;      // clamped to [0,1]
  double raw_value = 0.0;  // unclamped, +inf when the expression diverges
  bool applicable = true;
  BoundMethod method = BoundMethod::kDirectSum;
};

// Tail bound 2 * sum_{r < k <= N/2} C(N,k) exp(-aggregate (N-k) k / 2),
// evaluated with log-gamma binomials so N up to 10^7 is fine.
BoundReport err_bound_direct(int num_nodes, double aggregate, int radius);

// Two-piece tail bound with split index l = N^(2/3) (kept real-valued):
//   a = N exp(-(N-l) aggregate / 2),  b = (e N / l) exp(-N aggregate / 4),
//   raw = 2 (e^a - 1) + 2 b / (1 - b).
// Reports inapplicable with value 1 when b >= 1 (the geometric tail
// diverges).
BoundReport exact_recovery_bound(int num_nodes, double aggregate);

}  // namespace mlsbm
