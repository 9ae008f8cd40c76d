#include "mlsbm/graph.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace mlsbm {

MultilayerGraph::MultilayerGraph(int num_nodes, int num_layers)
    : num_nodes_(num_nodes), num_layers_(num_layers) {
  if (num_nodes < 1) throw std::invalid_argument("MultilayerGraph: num_nodes must be >= 1");
  if (num_layers < 1) throw std::invalid_argument("MultilayerGraph: num_layers must be >= 1");
  cells_.assign(static_cast<std::size_t>(num_layers) * pair_total(static_cast<std::size_t>(num_nodes)), 0);
}

bool MultilayerGraph::edge(int layer, int i, int j) const {
  if (layer < 0 || layer >= num_layers_) throw std::out_of_range("MultilayerGraph::edge: layer");
  if (i < 0 || i >= num_nodes_ || j < 0 || j >= num_nodes_)
    throw std::out_of_range("MultilayerGraph::edge: node index");
  if (i == j) return false;
  if (i > j) std::swap(i, j);
  const std::size_t n = static_cast<std::size_t>(num_nodes_);
  const std::size_t base = static_cast<std::size_t>(layer) * pair_total(n);
  return cells_[base + pair_index(n, static_cast<std::size_t>(i), static_cast<std::size_t>(j))] != 0;
}

void MultilayerGraph::set_edge(int layer, int i, int j, bool present) {
  if (layer < 0 || layer >= num_layers_) throw std::out_of_range("MultilayerGraph::set_edge: layer");
  if (i < 0 || i >= num_nodes_ || j < 0 || j >= num_nodes_)
    throw std::out_of_range("MultilayerGraph::set_edge: node index");
  if (i == j) throw std::invalid_argument("MultilayerGraph::set_edge: self-loops are not representable");
  if (i > j) std::swap(i, j);
  const std::size_t n = static_cast<std::size_t>(num_nodes_);
  const std::size_t base = static_cast<std::size_t>(layer) * pair_total(n);
  cells_[base + pair_index(n, static_cast<std::size_t>(i), static_cast<std::size_t>(j))] =
      present ? 1 : 0;
}

std::size_t MultilayerGraph::edge_count(int layer) const {
  if (layer < 0 || layer >= num_layers_) throw std::out_of_range("MultilayerGraph::edge_count: layer");
  const std::size_t per = pair_total(static_cast<std::size_t>(num_nodes_));
  const std::size_t base = static_cast<std::size_t>(layer) * per;
  std::size_t c = 0;
  for (std::size_t k = 0; k < per; ++k) c += cells_[base + k];
  return c;
}

std::size_t MultilayerGraph::edge_count() const {
  std::size_t c = 0;
  for (auto v : cells_) c += v;
  return c;
}

BlockAssignment::BlockAssignment(std::vector<int> labels, int num_communities)
    : labels_(std::move(labels)), num_communities_(num_communities) {
  if (num_communities < 1) throw std::invalid_argument("BlockAssignment: num_communities must be >= 1");
  if (labels_.empty()) throw std::invalid_argument("BlockAssignment: empty labelling");
  for (int v : labels_) {
    if (v < 1 || v > num_communities_)
      throw std::invalid_argument("BlockAssignment: label " + std::to_string(v) +
                                  " outside {1,...," + std::to_string(num_communities_) + "}");
  }
}

ConnectivityParams::ConnectivityParams(int num_communities, std::vector<Matrix> layers)
    : num_communities_(num_communities), layers_(std::move(layers)) {
  if (num_communities < 1) throw std::invalid_argument("ConnectivityParams: num_communities must be >= 1");
  if (layers_.empty()) throw std::invalid_argument("ConnectivityParams: no layers");
  const std::size_t k = static_cast<std::size_t>(num_communities);
  for (const Matrix& m : layers_) {
    if (m.size() != k) throw std::invalid_argument("ConnectivityParams: matrix size != num_communities");
    for (const auto& row : m) {
      if (row.size() != k) throw std::invalid_argument("ConnectivityParams: matrix is not square");
      for (double v : row) {
        if (!(v >= 0.0 && v <= 1.0))
          throw std::invalid_argument("ConnectivityParams: probability outside [0,1]");
      }
    }
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b)
        if (m[a][b] != m[b][a]) throw std::invalid_argument("ConnectivityParams: matrix not symmetric");
  }
}

ConnectivityParams ConnectivityParams::planted(int num_communities, const std::vector<double>& p,
                                               const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("ConnectivityParams::planted: p and q length differ");
  if (p.empty()) throw std::invalid_argument("ConnectivityParams::planted: no layers");
  std::vector<Matrix> layers;
  layers.reserve(p.size());
  const std::size_t k = static_cast<std::size_t>(num_communities);
  for (std::size_t t = 0; t < p.size(); ++t) {
    Matrix m(k, std::vector<double>(k, q[t]));
    for (std::size_t a = 0; a < k; ++a) m[a][a] = p[t];
    layers.push_back(std::move(m));
  }
  return ConnectivityParams(num_communities, std::move(layers));
}

ConnectivityParams ConnectivityParams::shared(int num_communities, double p, double q,
                                              int num_layers) {
  if (num_layers < 1) throw std::invalid_argument("ConnectivityParams::shared: num_layers must be >= 1");
  return planted(num_communities, std::vector<double>(static_cast<std::size_t>(num_layers), p),
                 std::vector<double>(static_cast<std::size_t>(num_layers), q));
}

}  // namespace mlsbm
