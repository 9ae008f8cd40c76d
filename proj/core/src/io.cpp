#include "mlsbm/io.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace mlsbm {

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return j;
}

void save_json(const json& j, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace

MultilayerGraph read_graph(const std::string& path) {
  const json j = load_json(path);
  try {
    const int n = j.at("num_nodes").get<int>();
    const int T = j.at("num_layers").get<int>();
    const auto& layers = j.at("layers");
    if (!layers.is_array() || static_cast<int>(layers.size()) != T)
      throw std::runtime_error(path + ": layers array length != num_layers");
    MultilayerGraph g(n, T);
    for (int t = 0; t < T; ++t) {
      for (const auto& e : layers.at(static_cast<std::size_t>(t))) {
        if (!e.is_array() || e.size() != 2)
          throw std::runtime_error(path + ": each edge must be an [i,j] pair");
        const int i = e.at(0).get<int>();
        const int jj = e.at(1).get<int>();
        if (i < 0 || jj < 0 || i >= n || jj >= n || i >= jj)
          throw std::runtime_error(path + ": edge indices must satisfy 0 <= i < j < num_nodes");
        g.set_edge(t, i, jj, true);
      }
    }
    return g;
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_graph(const MultilayerGraph& g, const std::string& path) {
  json layers = json::array();
  for (int t = 0; t < g.num_layers(); ++t) {
    json edges = json::array();
    for (int i = 0; i < g.num_nodes(); ++i)
      for (int j = i + 1; j < g.num_nodes(); ++j)
        if (g.edge(t, i, j)) edges.push_back({i, j});
    layers.push_back(std::move(edges));
  }
  save_json({{"num_nodes", g.num_nodes()}, {"num_layers", g.num_layers()}, {"layers", layers}},
            path);
}

BlockAssignment read_assignment(const std::string& path) {
  const json j = load_json(path);
  try {
    const auto labels = j.at("labels").get<std::vector<int>>();
    int k = 1;
    for (int v : labels) {
      if (v < 1) throw std::runtime_error(path + ": labels must be >= 1");
      k = std::max(k, v);
    }
    return BlockAssignment(labels, k);
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_assignment(const BlockAssignment& z, const std::string& path) {
  save_json({{"labels", z.labels()}}, path);
}

void write_trace(const ChainTrace& trace, const std::string& path, bool include_params) {
  json j{{"seed", trace.seed},
         {"iterations", trace.total_iterations},
         {"burn_in", trace.burn_in},
         {"alpha", trace.alpha},
         {"num_communities", trace.num_communities},
         {"num_nodes", trace.num_nodes},
         {"states", trace.states}};
  if (include_params && !trace.thetas.empty()) {
    j["thetas"] = trace.thetas;
    j["link_probs"] = trace.link_prob_states;
  }
  save_json(j, path);
}

ChainTrace read_trace(const std::string& path) {
  const json j = load_json(path);
  ChainTrace trace;
  try {
    trace.seed = j.at("seed").get<std::uint64_t>();
    trace.total_iterations = j.at("iterations").get<int>();
    trace.burn_in = j.at("burn_in").get<int>();
    trace.alpha = j.at("alpha").get<std::vector<double>>();
    trace.num_communities = j.at("num_communities").get<int>();
    trace.num_nodes = j.at("num_nodes").get<int>();
    trace.states = j.at("states").get<std::vector<std::vector<int>>>();
    if (j.contains("thetas")) {
      trace.thetas = j.at("thetas").get<std::vector<std::vector<double>>>();
      trace.link_prob_states = j.at("link_probs").get<std::vector<Matrix>>();
    }
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  for (const auto& z : trace.states) {
    if (static_cast<int>(z.size()) != trace.num_nodes)
      throw std::runtime_error(path + ": state length != num_nodes");
    for (int v : z)
      if (v < 1 || v > trace.num_communities)
        throw std::runtime_error(path + ": state label outside {1,...,K}");
  }
  return trace;
}

}  // namespace mlsbm
