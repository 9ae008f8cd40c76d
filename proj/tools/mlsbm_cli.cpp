#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mlsbm/bounds.hpp"
#include "mlsbm/dahl.hpp"
#include "mlsbm/divergence.hpp"
#include "mlsbm/experiment.hpp"
#include "mlsbm/generator.hpp"
#include "mlsbm/gibbs.hpp"
#include "mlsbm/io.hpp"
#include "mlsbm/likelihood.hpp"
#include "mlsbm/partition_metrics.hpp"

namespace {

using nlohmann::json;

// Stochastic subcommands fall back to an entropy seed; it is printed so the
// run can be reproduced.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  const std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) | rd();
  std::printf("seed: %" PRIu64 "\n", s);
  return s;
}

void emit(const json& payload, const std::string& format, const std::string& out_path) {
  std::string text;
  if (format == "json") {
    text = payload.dump(2) + "\n";
  } else {
    // single-row CSV over the top-level scalar fields, keys in sorted order
    std::string header, row;
    for (auto it = payload.begin(); it != payload.end(); ++it) {
      if (it.value().is_structured())
        throw std::runtime_error("csv output does not support nested field '" + it.key() + "'");
      if (!header.empty()) {
        header += ",";
        row += ",";
      }
      header += it.key();
      row += it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
    }
    text = header + "\n" + row + "\n";
  }
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + out_path + " for writing");
    out << text;
  }
}

std::string method_name(mlsbm::BoundMethod m) {
  switch (m) {
    case mlsbm::BoundMethod::kDirectSum: return "direct_sum";
    case mlsbm::BoundMethod::kSplitEll: return "split_ell";
    case mlsbm::BoundMethod::kPairwiseSum: return "pairwise_sum";
  }
  return "unknown";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planted-partition multilayer network toolkit"};
  app.require_subcommand(1);
  std::string format = "json";
  std::string out_path;

  // generate
  auto* gen = app.add_subcommand("generate", "Sample a planted two-block multilayer network");
  int gen_nodes = 100;
  int gen_layers = 1;
  double gen_p = 0.0, gen_q = 0.0;
  std::optional<std::uint64_t> gen_seed;
  std::string gen_truth_out;
  gen->add_option("--nodes", gen_nodes, "Number of nodes (even)")->required();
  gen->add_option("--layers", gen_layers, "Number of layers")->check(CLI::PositiveNumber);
  gen->add_option("--p", gen_p, "Within-block link probability")->required();
  gen->add_option("--q", gen_q, "Between-block link probability")->required();
  gen->add_option("--seed", gen_seed, "RNG seed (printed if omitted)");
  gen->add_option("--out", out_path, "Graph output path")->required();
  gen->add_option("--truth-out", gen_truth_out, "Also write the planted labelling here");

  // fit
  auto* fit = app.add_subcommand("fit", "Run the Gibbs sampler on a graph file");
  std::string fit_graph;
  int fit_k = 2;
  std::vector<double> fit_alpha;
  int fit_iterations = 1100;
  int fit_burn_in = 1000;
  std::optional<std::uint64_t> fit_seed;
  std::string fit_trace_out;
  bool fit_keep_params = false;
  fit->add_option("graph", fit_graph, "Graph file (JSON)")->required();
  fit->add_option("--communities", fit_k, "Number of communities")->check(CLI::PositiveNumber);
  fit->add_option("--alpha", fit_alpha, "Dirichlet weights, comma separated (default 200 per community)")
      ->delimiter(',');
  fit->add_option("--iterations", fit_iterations, "Total sweeps");
  fit->add_option("--burn-in", fit_burn_in, "Discarded initial sweeps");
  fit->add_option("--seed", fit_seed, "RNG seed (printed if omitted)");
  fit->add_option("--out", out_path, "Point-estimate output path")->required();
  fit->add_option("--trace", fit_trace_out, "Also write the retained trace here");
  fit->add_flag("--keep-params", fit_keep_params,
                "Retain weight/link-probability draws in the trace");

  // evaluate
  auto* eval = app.add_subcommand("evaluate", "Compare two labelling files");
  std::string eval_truth, eval_est;
  eval->add_option("truth", eval_truth, "Reference labelling (JSON)")->required();
  eval->add_option("estimate", eval_est, "Estimated labelling (JSON)")->required();
  eval->add_option("--out", out_path, "Output path (default stdout)");
  eval->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  // divergence
  auto* div = app.add_subcommand("divergence", "Per-layer and aggregate signal strength");
  double div_p = 0.0, div_q = 0.0;
  int div_layers = 1;
  std::optional<int> div_nodes;
  double div_delta = 0.1;
  div->add_option("--p", div_p, "Within-block link probability")->required();
  div->add_option("--q", div_q, "Between-block link probability")->required();
  div->add_option("--layers", div_layers, "Number of layers")->check(CLI::PositiveNumber);
  div->add_option("--nodes", div_nodes, "If given, classify the recovery regime for this N");
  div->add_option("--delta", div_delta, "Slack in the exact-recovery threshold");
  div->add_option("--out", out_path, "Output path (default stdout)");
  div->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  // bound
  auto* bnd = app.add_subcommand("bound", "Evaluate a posterior-error tail bound");
  int bnd_nodes = 0;
  std::optional<double> bnd_divergence;
  std::optional<double> bnd_p, bnd_q;
  int bnd_layers = 1;
  int bnd_radius = 0;
  std::string bnd_method = "direct";
  bnd->add_option("--nodes", bnd_nodes, "Number of nodes")->required();
  bnd->add_option("--divergence", bnd_divergence, "Aggregate divergence (overrides --p/--q)");
  bnd->add_option("--p", bnd_p, "Within-block link probability (with --q, derives the divergence)");
  bnd->add_option("--q", bnd_q, "Between-block link probability");
  bnd->add_option("--layers", bnd_layers, "Layers used when deriving the divergence")
      ->check(CLI::PositiveNumber);
  bnd->add_option("--radius", bnd_radius, "Classification-error radius (direct method)");
  bnd->add_option("--method", bnd_method, "Bound flavor")->check(CLI::IsMember({"direct", "split"}));
  bnd->add_option("--out", out_path, "Output path (default stdout)");
  bnd->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  // oracle
  auto* orc = app.add_subcommand("oracle",
                                 "Exact small-graph posterior, or its Monte Carlo error mass");
  std::string orc_graph, orc_truth;
  std::optional<int> orc_nodes;
  int orc_layers = 1;
  double orc_p = 0.0, orc_q = 0.0;
  int orc_radius = 0;
  int orc_replicates = 100;
  std::optional<std::uint64_t> orc_seed;
  int orc_jobs = 1;
  orc->add_option("--graph", orc_graph, "Graph file: emit the exact posterior for it");
  orc->add_option("--truth", orc_truth, "Reference labelling for the posterior mass report");
  orc->add_option("--nodes", orc_nodes, "Without --graph: planted size for the Monte Carlo run");
  orc->add_option("--layers", orc_layers, "Number of layers")->check(CLI::PositiveNumber);
  orc->add_option("--p", orc_p, "Within-block link probability")->required();
  orc->add_option("--q", orc_q, "Between-block link probability")->required();
  orc->add_option("--radius", orc_radius, "Classification-error radius");
  orc->add_option("--replicates", orc_replicates, "Monte Carlo replicates")->check(CLI::PositiveNumber);
  orc->add_option("--seed", orc_seed, "RNG seed (printed if omitted)");
  orc->add_option("--jobs", orc_jobs, "Worker threads")->envname("MLSBM_JOBS")->check(CLI::PositiveNumber);
  orc->add_option("--out", out_path, "Output path (default stdout)");
  orc->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  // reproduce-table1
  auto* rep = app.add_subcommand("reproduce-table1", "Run the full simulation study grid");
  std::string rep_config;
  std::optional<int> rep_nodes, rep_replicates, rep_iterations, rep_burn_in, rep_jobs;
  std::optional<int> rep_communities;
  std::vector<int> rep_layers;
  std::vector<double> rep_alpha;
  std::optional<double> rep_p, rep_q;
  std::optional<std::uint64_t> rep_seed;
  std::optional<std::string> rep_out;
  rep->add_option("--config", rep_config, "JSON config file (flags override its values)");
  rep->add_option("--nodes", rep_nodes, "Number of nodes (even)");
  rep->add_option("--communities", rep_communities, "Number of communities (must be 2)");
  rep->add_option("--layers", rep_layers, "Layer counts to sweep, comma separated")->delimiter(',');
  rep->add_option("--p", rep_p, "Single-case override: within-block probability (needs --q)");
  rep->add_option("--q", rep_q, "Single-case override: between-block probability (needs --p)");
  rep->add_option("--replicates", rep_replicates, "Replicates per cell");
  rep->add_option("--iterations", rep_iterations, "Total sweeps per chain");
  rep->add_option("--burn-in", rep_burn_in, "Discarded initial sweeps");
  rep->add_option("--alpha", rep_alpha, "Dirichlet weights, comma separated")->delimiter(',');
  rep->add_option("--seed", rep_seed, "Master seed (printed if omitted)");
  rep->add_option("--jobs", rep_jobs, "Worker threads")->envname("MLSBM_JOBS");
  rep->add_option("--out", rep_out, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const std::uint64_t seed = resolve_seed(gen_seed);
      const mlsbm::BlockAssignment truth = mlsbm::planted_bisection(gen_nodes);
      const auto params = mlsbm::ConnectivityParams::shared(2, gen_p, gen_q, gen_layers);
      const mlsbm::MultilayerGraph g = mlsbm::sample_network(truth, params, seed);
      mlsbm::write_graph(g, out_path);
      if (!gen_truth_out.empty()) mlsbm::write_assignment(truth, gen_truth_out);
    } else if (*fit) {
      const std::uint64_t seed = resolve_seed(fit_seed);
      const mlsbm::MultilayerGraph g = mlsbm::read_graph(fit_graph);
      std::vector<double> alpha = fit_alpha;
      if (alpha.empty()) alpha.assign(static_cast<std::size_t>(fit_k), 200.0);
      if (static_cast<int>(alpha.size()) != fit_k)
        throw std::runtime_error("fit: --alpha must have one entry per community");
      const mlsbm::ChainTrace trace = mlsbm::run_chain(g, mlsbm::PriorConfig{alpha}, fit_iterations,
                                                       fit_burn_in, seed, fit_keep_params);
      mlsbm::write_assignment(mlsbm::dahl_estimate(trace), out_path);
      if (!fit_trace_out.empty()) mlsbm::write_trace(trace, fit_trace_out, fit_keep_params);
    } else if (*eval) {
      const mlsbm::BlockAssignment truth = mlsbm::read_assignment(eval_truth);
      const mlsbm::BlockAssignment est = mlsbm::read_assignment(eval_est);
      const int n = truth.num_nodes();
      const int ace = mlsbm::ace_distance(truth, est);
      emit(json{{"nodes", n},
                {"hamming", mlsbm::hamming_distance(truth, est)},
                {"ace", ace},
                {"classification_error", static_cast<double>(ace) / n},
                {"mirkin", mlsbm::mirkin_distance(truth, est)},
                {"rand", mlsbm::rand_index(truth, est)},
                {"adjusted_rand", mlsbm::adjusted_rand(truth, est)}},
           format, out_path);
    } else if (*div) {
      const double per_layer = mlsbm::renyi_half(div_p, div_q);
      const double aggregate = static_cast<double>(div_layers) * per_layer;
      json payload{{"p", div_p},
                   {"q", div_q},
                   {"layers", div_layers},
                   {"per_layer", per_layer},
                   {"aggregate", aggregate},
                   {"sparse_approximation", mlsbm::sparse_approximation(div_p, div_q, 1.0)}};
      if (div_nodes) {
        const auto regime = mlsbm::recovery_regime(*div_nodes, aggregate, div_delta);
        payload["nodes"] = *div_nodes;
        payload["regime"] = regime == mlsbm::RecoveryRegime::kExact          ? "exact"
                            : regime == mlsbm::RecoveryRegime::kAlmostExact ? "almost_exact"
                                                                            : "undetermined";
      }
      emit(payload, format, out_path);
    } else if (*bnd) {
      double aggregate;
      if (bnd_divergence) {
        aggregate = *bnd_divergence;
      } else if (bnd_p && bnd_q) {
        aggregate = static_cast<double>(bnd_layers) * mlsbm::renyi_half(*bnd_p, *bnd_q);
      } else {
        throw std::runtime_error("bound: give --divergence, or --p and --q");
      }
      const mlsbm::BoundReport r = bnd_method == "direct"
                                       ? mlsbm::err_bound_direct(bnd_nodes, aggregate, bnd_radius)
                                       : mlsbm::exact_recovery_bound(bnd_nodes, aggregate);
      emit(json{{"nodes", r.num_nodes},
                {"divergence", r.aggregate},
                {"radius", r.radius},
                {"method", method_name(r.method)},
                {"value", r.value},
                {"raw_value", r.raw_value},
                {"applicable", r.applicable}},
           format, out_path);
    } else if (*orc) {
      if (!orc_graph.empty()) {
        const mlsbm::MultilayerGraph g = mlsbm::read_graph(orc_graph);
        const std::vector<double> p(static_cast<std::size_t>(g.num_layers()), orc_p);
        const std::vector<double> q(static_cast<std::size_t>(g.num_layers()), orc_q);
        const mlsbm::ExactPosterior post(g, p, q);
        json payload{{"nodes", g.num_nodes()},
                     {"layers", g.num_layers()},
                     {"p", orc_p},
                     {"q", orc_q},
                     {"coclustering", post.coclustering()}};
        if (!orc_truth.empty()) {
          const mlsbm::BlockAssignment truth = mlsbm::read_assignment(orc_truth);
          payload["radius"] = orc_radius;
          payload["mass_outside"] = post.mass_outside(truth, orc_radius);
        }
        if (format != "json")
          throw std::runtime_error("oracle: matrix output is only available as json");
        emit(payload, format, out_path);
      } else {
        if (!orc_nodes) throw std::runtime_error("oracle: give --graph or --nodes");
        const std::uint64_t seed = resolve_seed(orc_seed);
        const mlsbm::BlockAssignment truth = mlsbm::planted_bisection(*orc_nodes);
        const std::vector<double> p(static_cast<std::size_t>(orc_layers), orc_p);
        const std::vector<double> q(static_cast<std::size_t>(orc_layers), orc_q);
        const mlsbm::MonteCarloEstimate est =
            mlsbm::empirical_err(truth, p, q, orc_radius, orc_replicates, seed, orc_jobs);
        emit(json{{"nodes", *orc_nodes},
                  {"layers", orc_layers},
                  {"p", orc_p},
                  {"q", orc_q},
                  {"radius", orc_radius},
                  {"mean", est.mean},
                  {"std_error", est.std_error},
                  {"replicates", est.replicates},
                  {"seed", est.seed}},
             format, out_path);
      }
    } else if (*rep) {
      mlsbm::ExperimentConfig config;
      if (!rep_config.empty()) config = mlsbm::load_experiment_config(rep_config);
      if (rep_nodes) config.num_nodes = *rep_nodes;
      if (rep_communities) config.num_communities = *rep_communities;
      if (!rep_layers.empty()) config.layer_counts = rep_layers;
      if (rep_p || rep_q) {
        if (!(rep_p && rep_q)) throw std::runtime_error("reproduce-table1: --p and --q go together");
        config.cases = {{*rep_p, *rep_q}};
      }
      if (rep_replicates) config.replicates = *rep_replicates;
      if (rep_iterations) config.iterations = *rep_iterations;
      if (rep_burn_in) config.burn_in = *rep_burn_in;
      if (!rep_alpha.empty()) config.alpha = rep_alpha;
      config.master_seed = resolve_seed(rep_seed ? rep_seed : std::optional<std::uint64_t>{});
      if (rep_jobs) config.jobs = *rep_jobs;
      if (rep_out) config.out_dir = *rep_out;
      const mlsbm::SummaryTable table = mlsbm::reproduce_table1(config);
      std::printf("case,layers  ce_mean(sd)      ar_mean(sd)\n");
      for (const auto& c : table.cells)
        std::printf("%4d,%-6d  %.2f(%.2f)       %.2f(%.2f)\n", c.case_index, c.layers, c.ce_mean,
                    c.ce_sd, c.ar_mean, c.ar_sd);
      std::printf("wrote %s/summary.csv\n", config.out_dir.c_str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
