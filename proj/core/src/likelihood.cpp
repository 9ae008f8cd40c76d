#include "mlsbm/likelihood.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mlsbm {

double log_likelihood(const MultilayerGraph& x, const BlockAssignment& z,
                      const ConnectivityParams& params) {
  if (x.num_nodes() != z.num_nodes())
    throw std::invalid_argument("log_likelihood: node counts differ");
  if (x.num_layers() != params.num_layers())
    throw std::invalid_argument("log_likelihood: layer counts differ");
  if (z.num_communities() > params.num_communities())
    throw std::invalid_argument("log_likelihood: labelling uses more communities than params");

  const int n = x.num_nodes();
  const int T = x.num_layers();
  double ll = 0.0;
  for (int t = 0; t < T; ++t) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double q = params.prob(t, z.label(i), z.label(j));
        const bool e = x.edge(t, i, j);
        const double mass = e ? q : 1.0 - q;
        if (mass == 0.0) return -std::numeric_limits<double>::infinity();
        ll += std::log(mass);
      }
    }
  }
  return ll;
}

}  // namespace mlsbm
