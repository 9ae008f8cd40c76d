#pragma once

#include <cstdint>

#include "mlsbm/graph.hpp"

namespace mlsbm {

// Balanced two-block labelling: nodes 0..N/2-1 get label 1, the rest label 2.
// N must be even and at least 2.
BlockAssignment planted_bisection(int num_nodes);

// Draws each layer independently; within a layer, pair {i,j} is an edge with
// probability prob(t, z(i), z(j)). Draw order is fixed (layer-major, then
// pair-major) so a seed pins the exact network.
MultilayerGraph sample_network(const BlockAssignment& z, const ConnectivityParams& params,
                               std::uint64_t seed);

}  // namespace mlsbm
