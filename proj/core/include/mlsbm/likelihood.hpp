#pragma once

#include "mlsbm/graph.hpp"

namespace mlsbm {

// Log probability of the observed tensor given the labelling and the link
// probabilities: sum over layers and node pairs of the Bernoulli log-mass.
// A degenerate probability (0 or 1) contradicted by the data gives -inf.
double log_likelihood(const MultilayerGraph& x, const BlockAssignment& z,
                      const ConnectivityParams& params);

}  // namespace mlsbm
