#pragma once

#include <string>

#include "mlsbm/gibbs.hpp"
#include "mlsbm/graph.hpp"

namespace mlsbm {

// Graph file: {"num_nodes": N, "num_layers": T, "layers": [[[i,j], ...], ...]}
// with 0-based node indices and i < j in every edge.
MultilayerGraph read_graph(const std::string& path);
void write_graph(const MultilayerGraph& g, const std::string& path);

// Assignment file: {"labels": [l_1, ..., l_N]} with 1-based labels. The
// number of communities on read is the largest label present.
BlockAssignment read_assignment(const std::string& path);
void write_assignment(const BlockAssignment& z, const std::string& path);

// Trace file: run metadata plus the retained labellings; parameter draws are
// included only when the trace holds them and include_params is set (they
// dominate the file size).
void write_trace(const ChainTrace& trace, const std::string& path, bool include_params = false);
ChainTrace read_trace(const std::string& path);

}  // namespace mlsbm
