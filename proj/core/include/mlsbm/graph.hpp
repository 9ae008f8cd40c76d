#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace mlsbm {

using Matrix = std::vector<std::vector<double>>;

// Index of the unordered pair {i,j}, i < j, in a packed upper triangle over n nodes.
inline std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) {
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

inline std::size_t pair_total(std::size_t n) { return n * (n - 1) / 2; }

/// Binary symmetric adjacency tensor: T layers of simple undirected graphs on a
/// shared node set. Self-loops are absent by construction and entries are 0/1.
/// Node indices are 0-based.
class MultilayerGraph {
 public:
  MultilayerGraph(int num_nodes, int num_layers);

  int num_nodes() const { return num_nodes_; }
  int num_layers() const { return num_layers_; }

  bool edge(int layer, int i, int j) const;
  void set_edge(int layer, int i, int j, bool present);

  std::size_t edge_count(int layer) const;
  std::size_t edge_count() const;

  bool operator==(const MultilayerGraph&) const = default;

 private:
  int num_nodes_;
  int num_layers_;
  std::vector<std::uint8_t> cells_;  // layer-major packed upper triangles
};

/// Node labelling z: [N] -> [K]. Community labels are 1-based, values in
/// {1,...,K}; node indices are 0-based.
class BlockAssignment {
 public:
  BlockAssignment(std::vector<int> labels, int num_communities);

  int num_nodes() const { return static_cast<int>(labels_.size()); }
  int num_communities() const { return num_communities_; }
  int label(int i) const { return labels_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& labels() const { return labels_; }

  bool operator==(const BlockAssignment&) const = default;

 private:
  std::vector<int> labels_;
  int num_communities_;
};

/// Per-layer symmetric K x K link-probability matrices. Lookup takes 1-based
/// community labels, matching BlockAssignment.
class ConnectivityParams {
 public:
  ConnectivityParams(int num_communities, std::vector<Matrix> layers);

  // Planted-partition form: p_t on the diagonal, q_t off the diagonal.
  static ConnectivityParams planted(int num_communities, const std::vector<double>& p,
                                    const std::vector<double>& q);
  // All layers share the same two-probability matrix.
  static ConnectivityParams shared(int num_communities, double p, double q, int num_layers);

  int num_communities() const { return num_communities_; }
  int num_layers() const { return static_cast<int>(layers_.size()); }
  double prob(int layer, int label_a, int label_b) const {
    return layers_[static_cast<std::size_t>(layer)][static_cast<std::size_t>(label_a - 1)]
                  [static_cast<std::size_t>(label_b - 1)];
  }
  const Matrix& layer(int t) const { return layers_[static_cast<std::size_t>(t)]; }

 private:
  int num_communities_;
  std::vector<Matrix> layers_;
};

}  // namespace mlsbm
