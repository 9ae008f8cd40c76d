#pragma once

#include <cstdint>
#include <vector>

#include "mlsbm/graph.hpp"
#include "mlsbm/random.hpp"

namespace mlsbm {

using CountMatrix = std::vector<std::vector<std::int64_t>>;

// Community weights get a Dirichlet prior; every link probability is uniform
// on [0,1]. The number of communities is the length of alpha.
struct PriorConfig {
  std::vector<double> alpha;

  int num_communities() const { return static_cast<int>(alpha.size()); }
};

struct ChainState {
  std::vector<int> labels;    // 1-based community labels
  std::vector<double> theta;  // community weights, sum 1
  Matrix link_probs;          // symmetric K x K
};

// Link counts under a labelling:
//   block_sizes[a]          nodes with label a+1
//   per_layer_links[t][a][b] links between blocks a+1,b+1 in layer t
//   total_links[a][b]       the same summed over layers
//   capacity[a][b]          unordered node pairs between the blocks (one layer)
//   node_links[i][b]        links from node i to block b+1, layers summed
struct SufficientStats {
  std::vector<std::int64_t> block_sizes;
  std::vector<CountMatrix> per_layer_links;
  CountMatrix total_links;
  CountMatrix capacity;
  CountMatrix node_links;
};

SufficientStats sufficient_stats(const BlockAssignment& z, const MultilayerGraph& x);

// Full conditional of one node's label given everything else, normalized over
// labels 1..K. Computed from the graph directly, with no incremental
// bookkeeping. A state whose conditional carries no mass at all is rejected.
std::vector<double> label_conditional(const ChainState& state, const MultilayerGraph& x, int node);

// Samples from the full conditional, writes the draw into state.labels[node],
// and returns the new label. When a degenerate link matrix contradicts the
// data everywhere the current label is kept.
int update_label(int node, ChainState& state, const MultilayerGraph& x, RandomEngine& rng);

// Dirichlet parameters of the weight vector's full conditional: block sizes
// plus alpha.
std::vector<double> theta_posterior_params(const BlockAssignment& z,
                                           const std::vector<double>& alpha);

// Beta parameters of each link probability's full conditional:
//   a[ab] = links(a,b) + 1,  b[ab] = layers * capacity(a,b) - links(a,b) + 1.
struct BetaParams {
  Matrix a;
  Matrix b;
};
BetaParams q_posterior_params(const BlockAssignment& z, const MultilayerGraph& x);

// Posterior mode of the link matrix: links / (layers * capacity), entrywise.
// Entries with zero capacity are NaN.
Matrix q_posterior_mode(const BlockAssignment& z, const MultilayerGraph& x);

struct ParamDraw {
  std::vector<double> theta;
  Matrix link_probs;
};

// Draws the weights, then the upper triangle of the link matrix (row-major,
// diagonal included) from their full conditionals. The order is fixed so a
// seeded engine reproduces the draw exactly.
ParamDraw update_parameters(const BlockAssignment& z, const MultilayerGraph& x,
                            const PriorConfig& prior, RandomEngine& rng);

struct ChainTrace {
  int num_nodes = 0;
  int num_communities = 0;
  int total_iterations = 0;
  int burn_in = 0;
  std::uint64_t seed = 0;
  std::vector<double> alpha;
  std::vector<std::vector<int>> states;  // retained labellings, one per kept sweep
  // Filled only when the chain is asked to keep parameter draws.
  std::vector<std::vector<double>> thetas;
  std::vector<Matrix> link_prob_states;
};

/// Collapsed bookkeeping for fast sweeps. Label moves touch O(N + K) counters
/// via the precomputed pair multiplicities, so a sweep costs O(N^2 + N K^2)
/// regardless of the number of layers. The counters are re-derived from the
/// graph every 64 sweeps and any mismatch aborts the run.
class GibbsChain {
 public:
  GibbsChain(const MultilayerGraph& x, PriorConfig prior, std::uint64_t seed);

  void step();  // one sweep: every label in node order, then theta, then links

  const std::vector<int>& labels() const { return labels_; }
  const std::vector<double>& theta() const { return theta_; }
  const Matrix& link_probs() const { return link_probs_; }
  int sweeps_done() const { return sweeps_done_; }
  int num_communities() const { return prior_.num_communities(); }

  // Recomputes every counter from the graph and throws std::logic_error on
  // disagreement with the incremental state.
  void verify_stats() const;

 private:
  void draw_parameters();
  void move_node(int i, int to_label);

  const MultilayerGraph& x_;
  PriorConfig prior_;
  RandomEngine rng_;
  int n_;
  int layers_;
  std::vector<std::uint16_t> multiplicity_;  // dense N x N, layer-summed edges
  std::vector<int> labels_;
  std::vector<double> theta_;
  Matrix link_probs_;
  std::vector<std::int64_t> block_sizes_;
  CountMatrix links_;       // between-block link totals, layers summed
  CountMatrix node_links_;  // node-to-block link totals, layers summed
  int sweeps_done_ = 0;
};

// Runs a fresh chain for total_iterations sweeps and retains every state
// after burn_in. keep_params additionally retains the parameter draws.
ChainTrace run_chain(const MultilayerGraph& x, PriorConfig prior, int total_iterations,
                     int burn_in, std::uint64_t seed, bool keep_params = false);

}  // namespace mlsbm
