#include "mlsbm/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "mlsbm/generator.hpp"
#include "mlsbm/partition_metrics.hpp"
#include "mlsbm/random.hpp"

namespace mlsbm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

std::uint32_t encode_two_block(const BlockAssignment& z) {
  if (z.num_communities() > 2)
    throw std::invalid_argument("ExactPosterior: center labelling must use at most 2 blocks");
  std::uint32_t code = 0;
  for (int i = 0; i < z.num_nodes(); ++i)
    if (z.label(i) == 2) code |= (1u << i);
  return code;
}

void check_aggregate(double aggregate, const char* what) {
  if (std::isnan(aggregate) || aggregate < 0.0)
    throw std::invalid_argument(std::string(what) + ": divergence must be nonnegative");
}

}  // namespace

ExactPosterior::ExactPosterior(const MultilayerGraph& x, const std::vector<double>& p,
                               const std::vector<double>& q)
    : n_(x.num_nodes()) {
  if (n_ > kMaxNodes)
    throw std::invalid_argument("ExactPosterior: enumeration is capped at " +
                                std::to_string(kMaxNodes) + " nodes");
  const std::size_t T = static_cast<std::size_t>(x.num_layers());
  if (p.size() != T || q.size() != T)
    throw std::invalid_argument("ExactPosterior: p and q must have one entry per layer");
  for (std::size_t t = 0; t < T; ++t) {
    if (!(p[t] >= 0.0 && p[t] <= 1.0) || !(q[t] >= 0.0 && q[t] <= 1.0))
      throw std::invalid_argument("ExactPosterior: probability outside [0,1]");
  }

  // per-pair log-mass, layers summed: one value if the pair shares a block,
  // one if it does not; a code's log-likelihood is a sum of pair picks
  const std::size_t pairs = pair_total(static_cast<std::size_t>(n_));
  std::vector<double> same_lp(pairs, 0.0), diff_lp(pairs, 0.0);
  for (std::size_t t = 0; t < T; ++t) {
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        const std::size_t k =
            pair_index(static_cast<std::size_t>(n_), static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        const bool e = x.edge(static_cast<int>(t), i, j);
        same_lp[k] += std::log(e ? p[t] : 1.0 - p[t]);
        diff_lp[k] += std::log(e ? q[t] : 1.0 - q[t]);
      }
    }
  }

  const std::uint32_t mask = (1u << n_) - 1u;
  const std::uint32_t half = 1u << (n_ - 1);
  probs_.assign(static_cast<std::size_t>(mask) + 1, kNegInf);
  // a code and its global flip have identical likelihood, so enumerate only
  // codes with the top node in block 1 and mirror
  for (std::uint32_t code = 0; code < half; ++code) {
    double ll = 0.0;
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        const bool same = (((code >> i) ^ (code >> j)) & 1u) == 0u;
        const std::size_t k =
            pair_index(static_cast<std::size_t>(n_), static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        ll += same ? same_lp[k] : diff_lp[k];
      }
    }
    probs_[code] = ll;
    probs_[(~code) & mask] = ll;
  }

  double mx = kNegInf;
  for (double v : probs_) mx = std::max(mx, v);
  if (mx == kNegInf)
    throw std::invalid_argument("ExactPosterior: no labelling has positive likelihood");
  double z = 0.0;
  for (double v : probs_) z += std::exp(v - mx);
  const double log_z = mx + std::log(z);
  for (double& v : probs_) v = std::exp(v - log_z);
}

double ExactPosterior::probability(const std::vector<int>& labels) const {
  if (static_cast<int>(labels.size()) != n_)
    throw std::invalid_argument("ExactPosterior: labelling length != node count");
  std::uint32_t code = 0;
  for (int i = 0; i < n_; ++i) {
    const int v = labels[static_cast<std::size_t>(i)];
    if (v < 1 || v > 2) throw std::invalid_argument("ExactPosterior: label outside {1,2}");
    if (v == 2) code |= (1u << i);
  }
  return probs_[code];
}

double ExactPosterior::mass_outside(const BlockAssignment& center, int radius) const {
  if (center.num_nodes() != n_)
    throw std::invalid_argument("ExactPosterior: center labelling length != node count");
  if (radius < 0) throw std::invalid_argument("ExactPosterior: radius must be nonnegative");
  const std::uint32_t c = encode_two_block(center);
  double out = 0.0;
  for (std::uint32_t code = 0; code < probs_.size(); ++code) {
    const int h = std::popcount(code ^ c);
    const int ace = std::min(h, n_ - h);
    if (ace > radius) out += probs_[code];
  }
  return out;
}

Matrix ExactPosterior::coclustering() const {
  Matrix m(static_cast<std::size_t>(n_), std::vector<double>(static_cast<std::size_t>(n_), 0.0));
  for (std::uint32_t code = 0; code < probs_.size(); ++code) {
    const double pr = probs_[code];
    if (pr == 0.0) continue;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        if ((((code >> i) ^ (code >> j)) & 1u) == 0u) {
          m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += pr;
          m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] += pr;
        }
  }
  for (int i = 0; i < n_; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
  return m;
}

MonteCarloEstimate empirical_err(const BlockAssignment& z, const std::vector<double>& p,
                                 const std::vector<double>& q, int radius, int replicates,
                                 std::uint64_t seed, int jobs) {
  if (replicates < 1) throw std::invalid_argument("empirical_err: need at least one replicate");
  if (jobs < 1) throw std::invalid_argument("empirical_err: jobs must be positive");
  if (z.num_nodes() > ExactPosterior::kMaxNodes)
    throw std::invalid_argument("empirical_err: enumeration is capped at " +
                                std::to_string(ExactPosterior::kMaxNodes) + " nodes");

  const ConnectivityParams params = ConnectivityParams::planted(z.num_communities(), p, q);
  std::vector<double> values(static_cast<std::size_t>(replicates), 0.0);
  auto run_range = [&](int lo, int hi) {
    for (int r = lo; r < hi; ++r) {
      const std::uint64_t rep_seed = derive_seed(seed, {static_cast<std::uint64_t>(r)});
      const MultilayerGraph x = sample_network(z, params, rep_seed);
      const ExactPosterior post(x, p, q);
      values[static_cast<std::size_t>(r)] = post.mass_outside(z, radius);
    }
  };
  if (jobs == 1) {
    run_range(0, replicates);
  } else {
    const int chunk = (replicates + jobs - 1) / jobs;
    std::vector<std::thread> workers;
    for (int t = 0; t < jobs; ++t) {
      const int lo = t * chunk;
      const int hi = std::min(replicates, lo + chunk);
      if (lo >= hi) break;
      workers.emplace_back(run_range, lo, hi);
    }
    for (auto& w : workers) w.join();
  }

  MonteCarloEstimate est;
  est.replicates = replicates;
  est.seed = seed;
  est.mean = pairwise_sum(values) / static_cast<double>(replicates);
  if (replicates > 1) {
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double d = values[i] - est.mean;
      sq[i] = d * d;
    }
    const double var = pairwise_sum(sq) / static_cast<double>(replicates - 1);
    est.std_error = std::sqrt(var / static_cast<double>(replicates));
  }
  return est;
}

double pairwise_sum_bound(const BlockAssignment& z, const std::vector<BlockAssignment>& others,
                          double aggregate) {
  check_aggregate(aggregate, "pairwise_sum_bound");
  double s = 0.0;
  for (const BlockAssignment& w : others) {
    if (w.labels() == z.labels())
      throw std::invalid_argument(
          "pairwise_sum_bound: the reference labelling may not appear in the list");
    const std::uint64_t d = mirkin_distance(z, w);
    // distance 0 contributes exactly 1 even at infinite divergence
    s += d == 0 ? 1.0 : std::exp(-0.25 * aggregate * static_cast<double>(d));
  }
  return clamp01(s);
}

BoundReport err_bound_direct(int num_nodes, double aggregate, int radius) {
  if (num_nodes < 2) throw std::invalid_argument("err_bound_direct: need at least two nodes");
  if (radius < 0 || 2 * radius > num_nodes)
    throw std::invalid_argument("err_bound_direct: radius must lie in [0, N/2]");
  check_aggregate(aggregate, "err_bound_direct");

  const double n = static_cast<double>(num_nodes);
  double lse = kNegInf;
  for (int k = radius + 1; 2 * k <= num_nodes; ++k) {
    const double kd = static_cast<double>(k);
    const double log_binom = std::lgamma(n + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(n - kd + 1.0);
    lse = log_add(lse, log_binom - 0.5 * aggregate * (n - kd) * kd);
  }
  BoundReport rep;
  rep.num_nodes = num_nodes;
  rep.aggregate = aggregate;
  rep.radius = radius;
  rep.method = BoundMethod::kDirectSum;
  rep.raw_value = (lse == kNegInf) ? 0.0 : std::exp(std::log(2.0) + lse);
  rep.value = clamp01(rep.raw_value);
  rep.applicable = true;
  return rep;
}

BoundReport exact_recovery_bound(int num_nodes, double aggregate) {
  if (num_nodes < 2) throw std::invalid_argument("exact_recovery_bound: need at least two nodes");
  check_aggregate(aggregate, "exact_recovery_bound");

  const double n = static_cast<double>(num_nodes);
  const double ell = std::pow(n, 2.0 / 3.0);  // split index, deliberately real
  const double a = n * std::exp(-0.5 * (n - ell) * aggregate);
  const double b = (std::exp(1.0) * n / ell) * std::exp(-0.25 * n * aggregate);

  BoundReport rep;
  rep.num_nodes = num_nodes;
  rep.aggregate = aggregate;
  rep.radius = 0;
  rep.method = BoundMethod::kSplitEll;
  if (b >= 1.0) {
    rep.raw_value = std::numeric_limits<double>::infinity();
    rep.value = 1.0;
    rep.applicable = false;
    return rep;
  }
  rep.raw_value = 2.0 * std::expm1(a) + 2.0 * b / (1.0 - b);
  rep.value = clamp01(rep.raw_value);
  rep.applicable = true;
  return rep;
}

}  // namespace mlsbm
