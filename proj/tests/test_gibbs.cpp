#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "mlsbm/generator.hpp"
#include "mlsbm/gibbs.hpp"
#include "mlsbm/graph.hpp"
#include "mlsbm/likelihood.hpp"
#include "mlsbm/partition_metrics.hpp"
#include "mlsbm/random.hpp"

using namespace mlsbm;

namespace {

MultilayerGraph complete_graph(int n, int layers) {
  MultilayerGraph g(n, layers);
  for (int t = 0; t < layers; ++t)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) g.set_edge(t, i, j, true);
  return g;
}

Matrix shared_q(double on, double off) { return Matrix{{on, off}, {off, on}}; }

}  // namespace

TEST_CASE("sufficient stats on the worked four-node example") {
  const BlockAssignment z({1, 1, 2, 2}, 2);
  const auto g = complete_graph(4, 1);
  const auto s = sufficient_stats(z, g);

  CHECK(s.block_sizes == std::vector<std::int64_t>{2, 2});
  CHECK(s.total_links[0][0] == 1);
  CHECK(s.total_links[1][1] == 1);
  CHECK(s.total_links[0][1] == 4);
  CHECK(s.capacity[0][0] == 1);
  CHECK(s.capacity[1][1] == 1);
  CHECK(s.capacity[0][1] == 4);
  REQUIRE(s.per_layer_links.size() == 1);
  CHECK(s.per_layer_links[0][0][1] == 4);

  // node 0 sees one link into block 1 (node 1) and two into block 2
  CHECK(s.node_links[0][0] == 1);
  CHECK(s.node_links[0][1] == 2);

  const auto empty = sufficient_stats(z, MultilayerGraph(4, 1));
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) CHECK(empty.total_links[a][b] == 0);
}

TEST_CASE("sufficient stats satisfy the counting identities on random inputs") {
  RandomEngine rng(808);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + static_cast<int>(rng.uniform_int(8));
    const int T = 1 + static_cast<int>(rng.uniform_int(3));
    const int k = 2 + static_cast<int>(rng.uniform_int(3));
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (auto& v : labels) v = 1 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(k)));
    const BlockAssignment z(labels, k);
    const auto g = sample_network(z, ConnectivityParams::shared(k, 0.6, 0.3, T), rng.next_u64());
    const auto s = sufficient_stats(z, g);

    std::int64_t cap_sum = 0;
    for (int a = 0; a < k; ++a)
      for (int b = a; b < k; ++b) {
        cap_sum += s.capacity[a][b];
        // links never exceed layer count times capacity
        CHECK(s.total_links[a][b] >= 0);
        CHECK(s.total_links[a][b] <= T * s.capacity[a][b]);
        const std::int64_t na = s.block_sizes[a];
        const std::int64_t nb = s.block_sizes[b];
        CHECK(s.capacity[a][b] == (a == b ? na * (na - 1) / 2 : na * nb));
        std::int64_t across = 0;
        for (const auto& layer : s.per_layer_links) across += layer[a][b];
        CHECK(across == s.total_links[a][b]);
      }
    CHECK(cap_sum == static_cast<std::int64_t>(pair_total(static_cast<std::size_t>(n))));

    // per-node capacities partition the other N-1 nodes
    for (int i = 0; i < n; ++i) {
      std::int64_t links = 0, capacity = 0;
      for (int b = 0; b < k; ++b) {
        links += s.node_links[i][b];
        capacity += s.block_sizes[b] - (z.label(i) == b + 1 ? 1 : 0);
      }
      CHECK(capacity == n - 1);
      CHECK(links <= static_cast<std::int64_t>(T) * (n - 1));
    }
  }
}

TEST_CASE("label conditional reproduces the hand-evaluated two-node case") {
  MultilayerGraph g(2, 1);
  g.set_edge(0, 0, 1, true);
  ChainState state;
  state.labels = {2, 1};  // node 0's current label is irrelevant to its conditional
  state.theta = {0.5, 0.5};
  state.link_probs = shared_q(0.9, 0.1);
  const auto w = label_conditional(state, g, 0);
  REQUIRE(w.size() == 2);
  CHECK(w[0] == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(w[1] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(w[0] + w[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("flat link matrix reduces the conditional to the prior weights") {
  RandomEngine rng(99);
  const auto z = planted_bisection(6);
  const auto g = sample_network(z, ConnectivityParams::shared(2, 0.7, 0.2, 2), 4);
  ChainState state;
  state.labels = z.labels();
  state.theta = {0.3, 0.7};
  state.link_probs = shared_q(0.4, 0.4);
  for (int i = 0; i < 6; ++i) {
    const auto w = label_conditional(state, g, i);
    CHECK(w[0] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(w[1] == doctest::Approx(0.7).epsilon(1e-12));
  }
}

TEST_CASE("conditional ratios match the fixed-parameter likelihood ratios") {
  RandomEngine rng(123);
  const int n = 7, T = 2;
  std::vector<int> labels(n);
  for (auto& v : labels) v = 1 + static_cast<int>(rng.uniform_int(2));
  const auto g =
      sample_network(BlockAssignment(labels, 2), ConnectivityParams::shared(2, 0.8, 0.2, T), 21);
  ChainState state;
  state.labels = labels;
  state.theta = {0.45, 0.55};
  state.link_probs = shared_q(0.8, 0.2);
  const ConnectivityParams fixed(2, std::vector<Matrix>(T, state.link_probs));

  for (int i = 0; i < n; ++i) {
    const auto w = label_conditional(state, g, i);
    auto relabelled = labels;
    relabelled[static_cast<std::size_t>(i)] = 1;
    const double ll1 = log_likelihood(g, BlockAssignment(relabelled, 2), fixed);
    relabelled[static_cast<std::size_t>(i)] = 2;
    const double ll2 = log_likelihood(g, BlockAssignment(relabelled, 2), fixed);
    const double expected_ratio = (state.theta[0] / state.theta[1]) * std::exp(ll1 - ll2);
    CHECK(w[0] / w[1] == doctest::Approx(expected_ratio).epsilon(1e-9));
  }
}

TEST_CASE("label updates follow collapsed prior mass and keep labels when contradicted") {
  MultilayerGraph g(2, 1);
  g.set_edge(0, 0, 1, true);
  RandomEngine rng(5);

  ChainState forced;
  forced.labels = {2, 2};
  forced.theta = {1.0, 0.0};
  forced.link_probs = shared_q(0.9, 0.1);
  for (int rep = 0; rep < 50; ++rep) CHECK(update_label(0, forced, g, rng) == 1);

  // zero link matrix contradicts the observed edge under every label: the
  // update must leave the label alone rather than fail
  ChainState stuck;
  stuck.labels = {2, 1};
  stuck.theta = {0.5, 0.5};
  stuck.link_probs = shared_q(0.0, 0.0);
  CHECK(update_label(0, stuck, g, rng) == 2);
  CHECK(stuck.labels[0] == 2);
  CHECK_THROWS_AS(label_conditional(stuck, g, 0), std::invalid_argument);
}

TEST_CASE("weight posterior parameters add counts to the concentration") {
  const BlockAssignment z({1, 1, 2, 2}, 2);
  const auto params = theta_posterior_params(z, {200.0, 200.0});
  CHECK(params == std::vector<double>{202.0, 202.0});

  // an empty community keeps its bare prior mass
  const BlockAssignment lop({1, 1, 1}, 2);
  const auto lop_params = theta_posterior_params(lop, {2.5, 7.0});
  CHECK(lop_params == std::vector<double>{5.5, 7.0});
  CHECK_THROWS_AS(theta_posterior_params(z, {1.0}), std::invalid_argument);
}

TEST_CASE("link posterior parameters count hits and remaining capacity") {
  // two layers, one within-block-1 pair, linked in exactly one layer
  MultilayerGraph g(4, 2);
  g.set_edge(0, 0, 1, true);
  const BlockAssignment z({1, 1, 2, 2}, 2);
  const auto bp = q_posterior_params(z, g);
  CHECK(bp.a[0][0] == 2.0);
  CHECK(bp.b[0][0] == 2.0);
  // untouched blocks sit at the uniform prior Beta(1, T n_ab + 1 - 0)
  CHECK(bp.a[1][1] == 1.0);
  CHECK(bp.b[1][1] == 3.0);
  CHECK(bp.a[0][1] == 1.0);
  CHECK(bp.b[0][1] == 9.0);
  CHECK(bp.a[0][1] == bp.a[1][0]);
  CHECK(bp.b[0][1] == bp.b[1][0]);
}

TEST_CASE("link posterior mode averages layer link proportions") {
  const BlockAssignment z({1, 1, 2, 2}, 2);
  CHECK(q_posterior_mode(z, complete_graph(4, 3))[0][1] == 1.0);
  CHECK(q_posterior_mode(z, MultilayerGraph(4, 3))[0][1] == 0.0);

  // layer link counts 2 then 4 across capacity 4 give (2+4)/(2*4)
  MultilayerGraph g(4, 2);
  g.set_edge(0, 0, 2, true);
  g.set_edge(0, 0, 3, true);
  for (int i = 0; i < 2; ++i)
    for (int j = 2; j < 4; ++j) g.set_edge(1, i, j, true);
  CHECK(q_posterior_mode(z, g)[0][1] == doctest::Approx(0.75).epsilon(1e-15));

  // a singleton community has no within-block pairs: entry is undefined
  const BlockAssignment singleton({1, 2, 2, 2}, 2);
  CHECK(std::isnan(q_posterior_mode(singleton, g)[0][0]));
}

TEST_CASE("parameter updates are seed-deterministic with simplex and symmetry invariants") {
  const auto z = planted_bisection(8);
  const auto g = sample_network(z, ConnectivityParams::shared(2, 0.7, 0.2, 2), 31);
  const PriorConfig prior{{200.0, 200.0}};
  RandomEngine r1(9), r2(9);
  const auto d1 = update_parameters(z, g, prior, r1);
  const auto d2 = update_parameters(z, g, prior, r2);
  CHECK(d1.theta == d2.theta);
  CHECK(d1.link_probs == d2.link_probs);
  CHECK(std::accumulate(d1.theta.begin(), d1.theta.end(), 0.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d1.link_probs[0][1] == d1.link_probs[1][0]);
  for (const auto& row : d1.link_probs)
    for (double v : row) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
}

TEST_CASE("parameter draws have the conjugate posterior moments") {
  // one within-block pair linked in one of two layers: Beta(2,2), mean 1/2;
  // the empty cross block stays near its prior-dominated mean 1/10
  MultilayerGraph g(4, 2);
  g.set_edge(0, 0, 1, true);
  const BlockAssignment z({1, 1, 2, 2}, 2);
  const PriorConfig prior{{200.0, 200.0}};
  RandomEngine rng(77);
  const int reps = 40000;
  double q11 = 0, q12 = 0, th1 = 0;
  for (int i = 0; i < reps; ++i) {
    const auto d = update_parameters(z, g, prior, rng);
    q11 += d.link_probs[0][0];
    q12 += d.link_probs[0][1];
    th1 += d.theta[0];
  }
  CHECK(q11 / reps == doctest::Approx(0.5).epsilon(1e-2));
  CHECK(q12 / reps == doctest::Approx(0.1).epsilon(5e-2));
  // theta ~ Dirichlet(202, 202): mean 1/2, sd ~ 0.025
  CHECK(th1 / reps == doctest::Approx(0.5).epsilon(2e-3));
}

TEST_CASE("chains retain the requested states and replay bitwise under one seed") {
  const auto z = planted_bisection(10);
  const auto g = sample_network(z, ConnectivityParams::shared(2, 0.8, 0.2, 3), 14);
  const PriorConfig prior{{200.0, 200.0}};

  const auto t1 = run_chain(g, prior, 30, 20, 42, /*keep_params=*/true);
  const auto t2 = run_chain(g, prior, 30, 20, 42, /*keep_params=*/true);
  CHECK(t1.states == t2.states);
  CHECK(t1.thetas == t2.thetas);
  CHECK(t1.link_prob_states == t2.link_prob_states);
  REQUIRE(t1.states.size() == 10);
  CHECK(t1.thetas.size() == 10);
  CHECK(t1.num_nodes == 10);
  CHECK(t1.seed == 42);
  for (const auto& s : t1.states) {
    REQUIRE(s.size() == 10);
    for (int v : s) {
      CHECK(v >= 1);
      CHECK(v <= 2);
    }
  }

  const auto lean = run_chain(g, prior, 30, 20, 42);
  CHECK(lean.states == t1.states);
  CHECK(lean.thetas.empty());

  CHECK(run_chain(g, prior, 1, 0, 5).states.size() == 1);
  CHECK_THROWS_AS(run_chain(g, prior, 10, 10, 5), std::invalid_argument);
  CHECK_THROWS_AS(run_chain(g, prior, 0, 0, 5), std::invalid_argument);
  CHECK_THROWS_AS(run_chain(g, prior, 10, -1, 5), std::invalid_argument);
}

TEST_CASE("incremental counters survive long runs against the from-scratch audit") {
  const auto z = planted_bisection(12);
  const auto g = sample_network(z, ConnectivityParams::shared(2, 0.6, 0.3, 2), 8);
  GibbsChain chain(g, PriorConfig{{1.0, 1.0}}, 3);
  for (int s = 0; s < 200; ++s) chain.step();  // crosses the periodic audit several times
  CHECK_NOTHROW(chain.verify_stats());
  CHECK(chain.sweeps_done() == 200);
}

TEST_CASE("the chain recovers a strongly separated planted structure") {
  const auto truth = planted_bisection(12);
  const auto g = sample_network(truth, ConnectivityParams::shared(2, 0.9, 0.05, 3), 2026);
  const auto trace = run_chain(g, PriorConfig{{200.0, 200.0}}, 400, 300, 11);
  int worst = 0;
  for (const auto& s : trace.states)
    worst = std::max(worst, ace_distance(BlockAssignment(s, 2), truth));
  CHECK(worst <= 1);
}

// Successive-conditional coherence: the transition built from update_label and
// update_parameters must leave the prior-predictive joint law invariant when
// the data are regenerated from the current parameters each round. Forward
// draws and recycled draws are compared on several marginals.
TEST_CASE("joint-distribution test of one full sweep against forward sampling") {
  const int n = 6, T = 2;
  const PriorConfig prior{{3.0, 2.0}};
  const int k = prior.num_communities();

  struct Moments {
    double theta1 = 0, q11 = 0, q12 = 0, size1 = 0, edges = 0;
    double theta1_sq = 0, q11_sq = 0, q12_sq = 0, size1_sq = 0, edges_sq = 0;
    int count = 0;
    void add(const ChainState& st, const MultilayerGraph& g) {
      double s1 = 0;
      for (int v : st.labels)
        if (v == 1) s1 += 1;
      const double e = static_cast<double>(g.edge_count());
      theta1 += st.theta[0];
      q11 += st.link_probs[0][0];
      q12 += st.link_probs[0][1];
      size1 += s1;
      edges += e;
      theta1_sq += st.theta[0] * st.theta[0];
      q11_sq += st.link_probs[0][0] * st.link_probs[0][0];
      q12_sq += st.link_probs[0][1] * st.link_probs[0][1];
      size1_sq += s1 * s1;
      edges_sq += e * e;
      ++count;
    }
  };

  const auto draw_state = [&](RandomEngine& rng) {
    ChainState st;
    st.theta = rng.dirichlet(prior.alpha);
    st.link_probs = Matrix(2, std::vector<double>(2, 0.0));
    for (int a = 0; a < k; ++a)
      for (int b = a; b < k; ++b) st.link_probs[a][b] = st.link_probs[b][a] = rng.uniform();
    std::vector<double> logw(static_cast<std::size_t>(k));
    st.labels.resize(n);
    for (auto& v : st.labels) {
      for (int a = 0; a < k; ++a) logw[static_cast<std::size_t>(a)] = std::log(st.theta[a]);
      v = 1 + rng.categorical_log(logw);
    }
    return st;
  };
  const auto draw_data = [&](const ChainState& st, RandomEngine& rng) {
    return sample_network(BlockAssignment(st.labels, k),
                          ConnectivityParams(k, std::vector<Matrix>(T, st.link_probs)),
                          rng.next_u64());
  };

  Moments forward;
  {
    RandomEngine rng(314159);
    for (int i = 0; i < 40000; ++i) {
      const auto st = draw_state(rng);
      forward.add(st, draw_data(st, rng));
    }
  }

  Moments recycled;
  {
    RandomEngine rng(271828);
    auto st = draw_state(rng);
    auto g = draw_data(st, rng);
    const int thin = 10, keep = 15000, burn = 500;
    for (int it = 0; it < burn + keep * thin; ++it) {
      for (int i = 0; i < n; ++i) update_label(i, st, g, rng);
      const auto d = update_parameters(BlockAssignment(st.labels, k), g, prior, rng);
      st.theta = d.theta;
      st.link_probs = d.link_probs;
      g = draw_data(st, rng);
      if (it >= burn && (it - burn) % thin == thin - 1) recycled.add(st, g);
    }
    REQUIRE(recycled.count == keep);
  }

  const auto check_stat = [](double sum_f, double sq_f, int nf, double sum_r, double sq_r, int nr,
                             const char* name) {
    const double mf = sum_f / nf, mr = sum_r / nr;
    const double vf = sq_f / nf - mf * mf, vr = sq_r / nr - mr * mr;
    const double se = std::sqrt(vf / nf + vr / nr);
    INFO(name << ": forward " << mf << " recycled " << mr << " se " << se);
    CHECK(std::abs(mf - mr) <= 4.0 * se);
  };
  check_stat(forward.theta1, forward.theta1_sq, forward.count, recycled.theta1,
             recycled.theta1_sq, recycled.count, "theta1");
  check_stat(forward.q11, forward.q11_sq, forward.count, recycled.q11, recycled.q11_sq,
             recycled.count, "q11");
  check_stat(forward.q12, forward.q12_sq, forward.count, recycled.q12, recycled.q12_sq,
             recycled.count, "q12");
  check_stat(forward.size1, forward.size1_sq, forward.count, recycled.size1, recycled.size1_sq,
             recycled.count, "size1");
  check_stat(forward.edges, forward.edges_sq, forward.count, recycled.edges, recycled.edges_sq,
             recycled.count, "edges");
}
