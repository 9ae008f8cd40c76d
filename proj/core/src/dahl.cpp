#include "mlsbm/dahl.hpp"

#include <stdexcept>

namespace mlsbm {

CoclusteringMatrix coclustering_matrix(const ChainTrace& trace) {
  if (trace.states.empty()) throw std::invalid_argument("coclustering_matrix: no retained states");
  const int n = trace.num_nodes;
  CoclusteringMatrix pi;
  pi.num_nodes = n;
  pi.values.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (const auto& z : trace.states) {
    if (static_cast<int>(z.size()) != n)
      throw std::invalid_argument("coclustering_matrix: state length != num_nodes");
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (z[static_cast<std::size_t>(i)] == z[static_cast<std::size_t>(j)]) {
          pi.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += 1.0;
          pi.values[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] += 1.0;
        }
  }
  const double r = static_cast<double>(trace.states.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (i != j) pi.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] /= r;
    pi.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
  }
  return pi;
}

double dahl_score(const std::vector<int>& labels, const CoclusteringMatrix& pi) {
  if (static_cast<int>(labels.size()) != pi.num_nodes)
    throw std::invalid_argument("dahl_score: labelling length != matrix size");
  const int n = pi.num_nodes;
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double together =
          labels[static_cast<std::size_t>(i)] == labels[static_cast<std::size_t>(j)] ? 1.0 : 0.0;
      const double d = together - pi.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      s += d * d;
    }
  }
  return s;
}

BlockAssignment dahl_estimate(const ChainTrace& trace) {
  if (trace.states.empty()) throw std::invalid_argument("dahl_estimate: no retained states");
  const CoclusteringMatrix pi = coclustering_matrix(trace);
  std::size_t best = 0;
  double best_score = dahl_score(trace.states[0], pi);
  for (std::size_t s = 1; s < trace.states.size(); ++s) {
    const double score = dahl_score(trace.states[s], pi);
    if (score < best_score) {  // strict: ties keep the earliest state
      best_score = score;
      best = s;
    }
  }
  return BlockAssignment(trace.states[best], trace.num_communities);
}

}  // namespace mlsbm
