#include "mlsbm/generator.hpp"

#include <stdexcept>

#include "mlsbm/random.hpp"

namespace mlsbm {

BlockAssignment planted_bisection(int num_nodes) {
  if (num_nodes < 2 || num_nodes % 2 != 0)
    throw std::invalid_argument("planted_bisection: num_nodes must be even and >= 2");
  std::vector<int> labels(static_cast<std::size_t>(num_nodes), 2);
  for (int i = 0; i < num_nodes / 2; ++i) labels[static_cast<std::size_t>(i)] = 1;
  return BlockAssignment(std::move(labels), 2);
}

MultilayerGraph sample_network(const BlockAssignment& z, const ConnectivityParams& params,
                               std::uint64_t seed) {
  if (z.num_communities() > params.num_communities())
    throw std::invalid_argument("sample_network: labelling uses more communities than params");
  const int n = z.num_nodes();
  const int T = params.num_layers();
  MultilayerGraph g(n, T);
  RandomEngine rng(seed);
  for (int t = 0; t < T; ++t)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng.bernoulli(params.prob(t, z.label(i), z.label(j)))) g.set_edge(t, i, j, true);
  return g;
}

}  // namespace mlsbm
