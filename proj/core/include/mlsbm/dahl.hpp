#pragma once

#include <vector>

#include "mlsbm/gibbs.hpp"
#include "mlsbm/graph.hpp"

namespace mlsbm {

// Posterior co-clustering frequencies: values[i][j] is the fraction of
// retained states putting nodes i and j in the same block. Symmetric with a
// unit diagonal.
struct CoclusteringMatrix {
  int num_nodes = 0;
  Matrix values;
};

CoclusteringMatrix coclustering_matrix(const ChainTrace& trace);

// Least-squares deviation of one labelling from the co-clustering matrix:
// sum over unordered pairs of (together indicator - frequency)^2.
double dahl_score(const std::vector<int>& labels, const CoclusteringMatrix& pi);

// The retained state with minimal dahl_score. Ties go to the earliest
// retained index, so the result is deterministic.
BlockAssignment dahl_estimate(const ChainTrace& trace);

}  // namespace mlsbm
