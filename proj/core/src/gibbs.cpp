#include "mlsbm/gibbs.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mlsbm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_labels(const std::vector<int>& labels, int num_nodes, int num_communities,
                  const char* what) {
  if (static_cast<int>(labels.size()) != num_nodes)
    throw std::invalid_argument(std::string(what) + ": labelling length != node count");
  for (int v : labels)
    if (v < 1 || v > num_communities)
      throw std::invalid_argument(std::string(what) + ": label outside {1,...,K}");
}

CountMatrix zero_matrix(int k) {
  return CountMatrix(static_cast<std::size_t>(k),
                     std::vector<std::int64_t>(static_cast<std::size_t>(k), 0));
}

CountMatrix capacity_matrix(const std::vector<std::int64_t>& block_sizes) {
  const int k = static_cast<int>(block_sizes.size());
  CountMatrix cap = zero_matrix(k);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      const std::int64_t na = block_sizes[static_cast<std::size_t>(a)];
      const std::int64_t nb = block_sizes[static_cast<std::size_t>(b)];
      cap[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          (a == b) ? na * (na - 1) / 2 : na * nb;
    }
  }
  return cap;
}

// layer-summed core needed by the chain: block sizes, total links, node links
struct FlatStats {
  std::vector<std::int64_t> block_sizes;
  CountMatrix total_links;
  CountMatrix node_links;
};

FlatStats flat_stats(const MultilayerGraph& x, const std::vector<int>& labels, int k) {
  const int n = x.num_nodes();
  const int T = x.num_layers();
  FlatStats s;
  s.block_sizes.assign(static_cast<std::size_t>(k), 0);
  for (int v : labels) ++s.block_sizes[static_cast<std::size_t>(v - 1)];
  s.total_links = zero_matrix(k);
  s.node_links = CountMatrix(static_cast<std::size_t>(n),
                             std::vector<std::int64_t>(static_cast<std::size_t>(k), 0));
  for (int t = 0; t < T; ++t) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (!x.edge(t, i, j)) continue;
        const int a = labels[static_cast<std::size_t>(i)] - 1;
        const int b = labels[static_cast<std::size_t>(j)] - 1;
        ++s.node_links[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)];
        ++s.node_links[static_cast<std::size_t>(j)][static_cast<std::size_t>(a)];
        ++s.total_links[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        if (a != b) ++s.total_links[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)];
      }
    }
  }
  return s;
}

// raw log weights of one node's full conditional; -inf entries are possible
// with degenerate link probabilities
std::vector<double> label_log_weights(const ChainState& state, const MultilayerGraph& x,
                                      int node) {
  const int k = static_cast<int>(state.theta.size());
  check_labels(state.labels, x.num_nodes(), k, "label conditional");
  if (node < 0 || node >= x.num_nodes()) throw std::out_of_range("label conditional: node");
  if (static_cast<int>(state.link_probs.size()) != k)
    throw std::invalid_argument("label conditional: link matrix size != number of weights");

  const int n = x.num_nodes();
  const int T = x.num_layers();
  std::vector<std::int64_t> to_block(static_cast<std::size_t>(k), 0);
  std::vector<std::int64_t> size_wo(static_cast<std::size_t>(k), 0);
  for (int j = 0; j < n; ++j) {
    if (j == node) continue;
    ++size_wo[static_cast<std::size_t>(state.labels[static_cast<std::size_t>(j)] - 1)];
  }
  for (int t = 0; t < T; ++t)
    for (int j = 0; j < n; ++j)
      if (j != node && x.edge(t, node, j))
        ++to_block[static_cast<std::size_t>(state.labels[static_cast<std::size_t>(j)] - 1)];

  std::vector<double> logw(static_cast<std::size_t>(k));
  for (int a = 0; a < k; ++a) {
    double w = std::log(state.theta[static_cast<std::size_t>(a)]);
    for (int b = 0; b < k; ++b) {
      const double q = state.link_probs[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      const std::int64_t hits = to_block[static_cast<std::size_t>(b)];
      const std::int64_t misses =
          static_cast<std::int64_t>(T) * size_wo[static_cast<std::size_t>(b)] - hits;
      if (hits != 0) w += static_cast<double>(hits) * std::log(q);
      if (misses != 0) w += static_cast<double>(misses) * std::log(1.0 - q);
    }
    logw[static_cast<std::size_t>(a)] = w;
  }
  return logw;
}

}  // namespace

SufficientStats sufficient_stats(const BlockAssignment& z, const MultilayerGraph& x) {
  if (z.num_nodes() != x.num_nodes())
    throw std::invalid_argument("sufficient_stats: labelling length != node count");
  const int k = z.num_communities();
  const int n = x.num_nodes();
  const int T = x.num_layers();

  SufficientStats s;
  s.block_sizes.assign(static_cast<std::size_t>(k), 0);
  for (int v : z.labels()) ++s.block_sizes[static_cast<std::size_t>(v - 1)];
  s.per_layer_links.assign(static_cast<std::size_t>(T), zero_matrix(k));
  s.total_links = zero_matrix(k);
  s.node_links = CountMatrix(static_cast<std::size_t>(n),
                             std::vector<std::int64_t>(static_cast<std::size_t>(k), 0));
  for (int t = 0; t < T; ++t) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (!x.edge(t, i, j)) continue;
        const int a = z.label(i) - 1;
        const int b = z.label(j) - 1;
        ++s.node_links[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)];
        ++s.node_links[static_cast<std::size_t>(j)][static_cast<std::size_t>(a)];
        auto& lt = s.per_layer_links[static_cast<std::size_t>(t)];
        ++lt[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        if (a != b) ++lt[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)];
        ++s.total_links[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        if (a != b) ++s.total_links[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)];
      }
    }
  }
  s.capacity = capacity_matrix(s.block_sizes);
  return s;
}

std::vector<double> label_conditional(const ChainState& state, const MultilayerGraph& x,
                                      int node) {
  std::vector<double> logw = label_log_weights(state, x, node);
  if (!normalize_log_weights(logw))
    throw std::invalid_argument("label_conditional: conditional has no mass anywhere");
  return logw;
}

int update_label(int node, ChainState& state, const MultilayerGraph& x, RandomEngine& rng) {
  const std::vector<double> logw = label_log_weights(state, x, node);
  bool any = false;
  for (double w : logw)
    if (w != kNegInf) any = true;
  if (!any) return state.labels[static_cast<std::size_t>(node)];  // contradicted everywhere
  const int drawn = rng.categorical_log(logw) + 1;
  state.labels[static_cast<std::size_t>(node)] = drawn;
  return drawn;
}

std::vector<double> theta_posterior_params(const BlockAssignment& z,
                                           const std::vector<double>& alpha) {
  if (static_cast<int>(alpha.size()) != z.num_communities())
    throw std::invalid_argument("theta_posterior_params: alpha length != K");
  std::vector<double> out(alpha);
  for (int v : z.labels()) out[static_cast<std::size_t>(v - 1)] += 1.0;
  return out;
}

BetaParams q_posterior_params(const BlockAssignment& z, const MultilayerGraph& x) {
  const SufficientStats s = sufficient_stats(z, x);
  const int k = z.num_communities();
  const std::int64_t T = x.num_layers();
  BetaParams out;
  out.a.assign(static_cast<std::size_t>(k), std::vector<double>(static_cast<std::size_t>(k), 0.0));
  out.b = out.a;
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      const std::int64_t links = s.total_links[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      const std::int64_t cap = s.capacity[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      out.a[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = static_cast<double>(links + 1);
      out.b[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          static_cast<double>(T * cap - links + 1);
    }
  }
  return out;
}

Matrix q_posterior_mode(const BlockAssignment& z, const MultilayerGraph& x) {
  const SufficientStats s = sufficient_stats(z, x);
  const int k = z.num_communities();
  const double T = static_cast<double>(x.num_layers());
  Matrix out(static_cast<std::size_t>(k), std::vector<double>(static_cast<std::size_t>(k), 0.0));
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      const double links =
          static_cast<double>(s.total_links[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
      const double cap =
          static_cast<double>(s.capacity[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
      out[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          cap > 0.0 ? links / (T * cap) : std::numeric_limits<double>::quiet_NaN();
    }
  }
  return out;
}

ParamDraw update_parameters(const BlockAssignment& z, const MultilayerGraph& x,
                            const PriorConfig& prior, RandomEngine& rng) {
  if (prior.num_communities() != z.num_communities())
    throw std::invalid_argument("update_parameters: prior size != K");
  ParamDraw out;
  out.theta = rng.dirichlet(theta_posterior_params(z, prior.alpha));
  const BetaParams bp = q_posterior_params(z, x);
  const std::size_t k = static_cast<std::size_t>(z.num_communities());
  out.link_probs.assign(k, std::vector<double>(k, 0.0));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a; b < k; ++b) {
      const double q = rng.beta(bp.a[a][b], bp.b[a][b]);
      out.link_probs[a][b] = q;
      out.link_probs[b][a] = q;
    }
  }
  return out;
}

GibbsChain::GibbsChain(const MultilayerGraph& x, PriorConfig prior, std::uint64_t seed)
    : x_(x), prior_(std::move(prior)), rng_(seed), n_(x.num_nodes()), layers_(x.num_layers()) {
  const int k = prior_.num_communities();
  if (k < 1) throw std::invalid_argument("GibbsChain: prior has no communities");
  for (double a : prior_.alpha)
    if (!(a > 0.0)) throw std::invalid_argument("GibbsChain: alpha entries must be positive");

  multiplicity_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0);
  for (int t = 0; t < layers_; ++t)
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        if (x.edge(t, i, j)) {
          ++multiplicity_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)];
          ++multiplicity_[static_cast<std::size_t>(j) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i)];
        }

  labels_.resize(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i)
    labels_[static_cast<std::size_t>(i)] = static_cast<int>(rng_.uniform_int(static_cast<std::uint64_t>(k))) + 1;

  FlatStats s = flat_stats(x_, labels_, k);
  block_sizes_ = std::move(s.block_sizes);
  links_ = std::move(s.total_links);
  node_links_ = std::move(s.node_links);

  theta_ = rng_.dirichlet(prior_.alpha);
  link_probs_.assign(static_cast<std::size_t>(k), std::vector<double>(static_cast<std::size_t>(k), 0.0));
  for (int a = 0; a < k; ++a) {
    for (int b = a; b < k; ++b) {
      const double q = rng_.uniform();
      link_probs_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = q;
      link_probs_[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = q;
    }
  }
}

void GibbsChain::move_node(int i, int to_label) {
  const int from = labels_[static_cast<std::size_t>(i)] - 1;
  const int to = to_label - 1;
  const auto& s_i = node_links_[static_cast<std::size_t>(i)];
  const int k = prior_.num_communities();
  // between-block totals: node i's links leave row `from` and enter row `to`
  for (int b = 0; b < k; ++b) {
    const std::int64_t c = s_i[static_cast<std::size_t>(b)];
    if (c == 0) continue;
    links_[static_cast<std::size_t>(from)][static_cast<std::size_t>(b)] -= c;
    if (b != from) links_[static_cast<std::size_t>(b)][static_cast<std::size_t>(from)] -= c;
    links_[static_cast<std::size_t>(to)][static_cast<std::size_t>(b)] += c;
    if (b != to) links_[static_cast<std::size_t>(b)][static_cast<std::size_t>(to)] += c;
  }
  --block_sizes_[static_cast<std::size_t>(from)];
  ++block_sizes_[static_cast<std::size_t>(to)];
  labels_[static_cast<std::size_t>(i)] = to_label;
  const std::size_t row = static_cast<std::size_t>(i) * static_cast<std::size_t>(n_);
  for (int j = 0; j < n_; ++j) {
    const std::uint16_t m = multiplicity_[row + static_cast<std::size_t>(j)];
    if (m == 0) continue;
    node_links_[static_cast<std::size_t>(j)][static_cast<std::size_t>(from)] -= m;
    node_links_[static_cast<std::size_t>(j)][static_cast<std::size_t>(to)] += m;
  }
}

void GibbsChain::step() {
  const int k = prior_.num_communities();
  std::vector<double> logw(static_cast<std::size_t>(k));
  std::vector<double> log_q(static_cast<std::size_t>(k) * static_cast<std::size_t>(k));
  std::vector<double> log_1mq(log_q.size());
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      const double q = link_probs_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      log_q[static_cast<std::size_t>(a * k + b)] = std::log(q);
      log_1mq[static_cast<std::size_t>(a * k + b)] = std::log(1.0 - q);
    }
  }
  std::vector<double> log_theta(static_cast<std::size_t>(k));
  for (int a = 0; a < k; ++a)
    log_theta[static_cast<std::size_t>(a)] = std::log(theta_[static_cast<std::size_t>(a)]);

  for (int i = 0; i < n_; ++i) {
    const auto& s_i = node_links_[static_cast<std::size_t>(i)];
    const int cur = labels_[static_cast<std::size_t>(i)] - 1;
    bool any = false;
    for (int a = 0; a < k; ++a) {
      double w = log_theta[static_cast<std::size_t>(a)];
      for (int b = 0; b < k; ++b) {
        const std::int64_t hits = s_i[static_cast<std::size_t>(b)];
        const std::int64_t size_wo = block_sizes_[static_cast<std::size_t>(b)] - (b == cur ? 1 : 0);
        const std::int64_t misses = static_cast<std::int64_t>(layers_) * size_wo - hits;
        if (hits != 0) w += static_cast<double>(hits) * log_q[static_cast<std::size_t>(a * k + b)];
        if (misses != 0) w += static_cast<double>(misses) * log_1mq[static_cast<std::size_t>(a * k + b)];
      }
      logw[static_cast<std::size_t>(a)] = w;
      if (w != kNegInf) any = true;
    }
    if (!any) continue;  // degenerate link matrix contradicted everywhere: keep label
    const int next = rng_.categorical_log(logw) + 1;
    if (next != cur + 1) move_node(i, next);
  }
  draw_parameters();
  ++sweeps_done_;
  if (sweeps_done_ % 64 == 0) verify_stats();
}

void GibbsChain::draw_parameters() {
  const int k = prior_.num_communities();
  std::vector<double> dir(prior_.alpha);
  for (int a = 0; a < k; ++a)
    dir[static_cast<std::size_t>(a)] += static_cast<double>(block_sizes_[static_cast<std::size_t>(a)]);
  theta_ = rng_.dirichlet(dir);

  const CountMatrix cap = capacity_matrix(block_sizes_);
  const std::int64_t T = layers_;
  for (int a = 0; a < k; ++a) {
    for (int b = a; b < k; ++b) {
      const std::int64_t links = links_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      const std::int64_t c = cap[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      const double q = rng_.beta(static_cast<double>(links + 1), static_cast<double>(T * c - links + 1));
      link_probs_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = q;
      link_probs_[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = q;
    }
  }
}

void GibbsChain::verify_stats() const {
  const FlatStats s = flat_stats(x_, labels_, prior_.num_communities());
  if (s.block_sizes != block_sizes_ || s.total_links != links_ || s.node_links != node_links_)
    throw std::logic_error("GibbsChain: incremental counters drifted from the graph");
}

ChainTrace run_chain(const MultilayerGraph& x, PriorConfig prior, int total_iterations,
                     int burn_in, std::uint64_t seed, bool keep_params) {
  if (total_iterations < 1) throw std::invalid_argument("run_chain: need at least one iteration");
  if (burn_in < 0 || burn_in >= total_iterations)
    throw std::invalid_argument("run_chain: burn_in must lie in [0, total_iterations)");

  GibbsChain chain(x, prior, seed);
  ChainTrace trace;
  trace.num_nodes = x.num_nodes();
  trace.num_communities = prior.num_communities();
  trace.total_iterations = total_iterations;
  trace.burn_in = burn_in;
  trace.seed = seed;
  trace.alpha = prior.alpha;
  trace.states.reserve(static_cast<std::size_t>(total_iterations - burn_in));
  for (int s = 1; s <= total_iterations; ++s) {
    chain.step();
    if (s > burn_in) {
      trace.states.push_back(chain.labels());
      if (keep_params) {
        trace.thetas.push_back(chain.theta());
        trace.link_prob_states.push_back(chain.link_probs());
      }
    }
  }
  return trace;
}

}  // namespace mlsbm
