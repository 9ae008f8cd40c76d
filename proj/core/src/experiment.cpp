#include "mlsbm/experiment.hpp"

#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <thread>

#include <json.hpp>

#include "mlsbm/dahl.hpp"
#include "mlsbm/generator.hpp"
#include "mlsbm/gibbs.hpp"
#include "mlsbm/partition_metrics.hpp"
#include "mlsbm/random.hpp"

namespace mlsbm {

namespace {

void check_prob(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(what) + ": probability outside [0,1]");
}

// fixed-precision cell for the CSVs; CE/AR and their summaries use 6 decimals
std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

struct CellStats {
  double mean = 0.0;
  double sd = 0.0;
};

CellStats stats(const std::vector<double>& values) {
  CellStats out;
  const double n = static_cast<double>(values.size());
  out.mean = pairwise_sum(values) / n;
  if (values.size() > 1) {
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double d = values[i] - out.mean;
      sq[i] = d * d;
    }
    out.sd = std::sqrt(pairwise_sum(sq) / (n - 1.0));
  }
  return out;
}

int find_case_index(const ExperimentConfig& config, double p, double q) {
  for (std::size_t c = 0; c < config.cases.size(); ++c)
    if (config.cases[c].first == p && config.cases[c].second == q) return static_cast<int>(c) + 1;
  return 0;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

void validate_config(const ExperimentConfig& config) {
  if (config.num_nodes < 2) throw std::invalid_argument("config: nodes must be >= 2");
  if (config.num_nodes % 2 != 0)
    throw std::invalid_argument("config: nodes must be even for the planted two-block truth");
  if (config.num_communities != 2)
    throw std::invalid_argument("config: the study design uses exactly 2 communities");
  if (config.layer_counts.empty()) throw std::invalid_argument("config: no layer counts");
  for (int t : config.layer_counts)
    if (t < 1) throw std::invalid_argument("config: layer counts must be positive");
  if (config.cases.empty()) throw std::invalid_argument("config: no (p,q) cases");
  for (const auto& [p, q] : config.cases) {
    check_prob(p, "config");
    check_prob(q, "config");
  }
  if (config.replicates < 1) throw std::invalid_argument("config: replicates must be >= 1");
  if (config.iterations <= config.burn_in || config.burn_in < 0)
    throw std::invalid_argument("config: need iterations > burn_in >= 0");
  if (static_cast<int>(config.alpha.size()) != config.num_communities)
    throw std::invalid_argument("config: alpha must have one entry per community");
  for (double a : config.alpha)
    if (!(a > 0.0)) throw std::invalid_argument("config: alpha entries must be positive");
  if (config.jobs < 1) throw std::invalid_argument("config: jobs must be >= 1");
}

std::uint64_t replicate_seed(std::uint64_t master, int layers, double p, double q,
                             int replicate_index) {
  return derive_seed(master, {static_cast<std::uint64_t>(layers), std::bit_cast<std::uint64_t>(p),
                              std::bit_cast<std::uint64_t>(q),
                              static_cast<std::uint64_t>(replicate_index)});
}

ReplicateResult run_replicate(int layers, double p, double q, int replicate_index,
                              const ExperimentConfig& config) {
  validate_config(config);
  check_prob(p, "run_replicate");
  check_prob(q, "run_replicate");
  if (layers < 1) throw std::invalid_argument("run_replicate: layers must be positive");
  if (replicate_index < 0) throw std::invalid_argument("run_replicate: negative replicate index");

  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t rep_seed = replicate_seed(config.master_seed, layers, p, q, replicate_index);
  const BlockAssignment truth = planted_bisection(config.num_nodes);
  const ConnectivityParams params = ConnectivityParams::shared(2, p, q, layers);
  const MultilayerGraph x = sample_network(truth, params, derive_seed(rep_seed, {1}));
  const ChainTrace trace = run_chain(x, PriorConfig{config.alpha}, config.iterations,
                                     config.burn_in, derive_seed(rep_seed, {2}));
  const BlockAssignment estimate = dahl_estimate(trace);

  ReplicateResult res;
  res.case_index = find_case_index(config, p, q);
  res.p = p;
  res.q = q;
  res.layers = layers;
  res.replicate = replicate_index + 1;
  res.classification_error =
      static_cast<double>(ace_distance(truth, estimate)) / static_cast<double>(config.num_nodes);
  res.adjusted_rand = adjusted_rand(truth, estimate);
  res.seed = rep_seed;
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

std::vector<ReplicateResult> run_cell(int layers, double p, double q,
                                      const ExperimentConfig& config) {
  std::vector<ReplicateResult> out;
  out.reserve(static_cast<std::size_t>(config.replicates));
  for (int r = 0; r < config.replicates; ++r) out.push_back(run_replicate(layers, p, q, r, config));
  return out;
}

SummaryTable summarize(const std::vector<ReplicateResult>& results,
                       const ExperimentConfig& config) {
  SummaryTable table;
  for (std::size_t c = 0; c < config.cases.size(); ++c) {
    for (int layers : config.layer_counts) {
      const auto [p, q] = config.cases[c];
      std::vector<double> ce, ar;
      for (const ReplicateResult& r : results) {
        if (r.case_index == static_cast<int>(c) + 1 && r.layers == layers) {
          ce.push_back(r.classification_error);
          ar.push_back(r.adjusted_rand);
        }
      }
      if (ce.empty()) continue;
      SummaryCell cell;
      cell.case_index = static_cast<int>(c) + 1;
      cell.p = p;
      cell.q = q;
      cell.layers = layers;
      cell.replicates = static_cast<int>(ce.size());
      const CellStats cs = stats(ce);
      const CellStats as = stats(ar);
      cell.ce_mean = cs.mean;
      cell.ce_sd = cs.sd;
      cell.ar_mean = as.mean;
      cell.ar_sd = as.sd;
      table.cells.push_back(cell);
    }
  }
  return table;
}

void write_results(const std::vector<ReplicateResult>& results, const SummaryTable& table,
                   const std::string& out_dir) {
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);

  std::string rep_csv = "case,p,q,layers,replicate,classification_error,adjusted_rand,seed,seconds\n";
  for (const ReplicateResult& r : results) {
    rep_csv += std::to_string(r.case_index) + "," + fixed6(r.p) + "," + fixed6(r.q) + "," +
               std::to_string(r.layers) + "," + std::to_string(r.replicate) + "," +
               fixed6(r.classification_error) + "," + fixed6(r.adjusted_rand) + "," +
               std::to_string(r.seed) + "," + fixed3(r.seconds) + "\n";
  }
  write_file(dir / "replicates.csv", rep_csv);

  std::string sum_csv = "case,p,q,layers,replicates,ce_mean,ce_sd,ar_mean,ar_sd\n";
  for (const SummaryCell& c : table.cells) {
    sum_csv += std::to_string(c.case_index) + "," + fixed6(c.p) + "," + fixed6(c.q) + "," +
               std::to_string(c.layers) + "," + std::to_string(c.replicates) + "," +
               fixed6(c.ce_mean) + "," + fixed6(c.ce_sd) + "," + fixed6(c.ar_mean) + "," +
               fixed6(c.ar_sd) + "\n";
  }
  write_file(dir / "summary.csv", sum_csv);

  nlohmann::json jr = nlohmann::json::array();
  for (const ReplicateResult& r : results) {
    jr.push_back({{"case", r.case_index},
                  {"p", r.p},
                  {"q", r.q},
                  {"layers", r.layers},
                  {"replicate", r.replicate},
                  {"classification_error", r.classification_error},
                  {"adjusted_rand", r.adjusted_rand},
                  {"seed", r.seed},
                  {"seconds", r.seconds}});
  }
  write_file(dir / "replicates.json", nlohmann::json{{"replicates", jr}}.dump(2) + "\n");

  nlohmann::json js = nlohmann::json::array();
  for (const SummaryCell& c : table.cells) {
    js.push_back({{"case", c.case_index},
                  {"p", c.p},
                  {"q", c.q},
                  {"layers", c.layers},
                  {"replicates", c.replicates},
                  {"ce_mean", c.ce_mean},
                  {"ce_sd", c.ce_sd},
                  {"ar_mean", c.ar_mean},
                  {"ar_sd", c.ar_sd}});
  }
  write_file(dir / "summary.json", nlohmann::json{{"cells", js}}.dump(2) + "\n");
}

SummaryTable reproduce_table1(const ExperimentConfig& config) {
  validate_config(config);

  struct Task {
    int case_index;  // 0-based here
    int layers;
    int replicate;   // 0-based
  };
  std::vector<Task> tasks;
  for (std::size_t c = 0; c < config.cases.size(); ++c)
    for (int layers : config.layer_counts)
      for (int r = 0; r < config.replicates; ++r)
        tasks.push_back({static_cast<int>(c), layers, r});

  std::vector<ReplicateResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t id = next.fetch_add(1);
      if (id >= tasks.size()) return;
      const Task& t = tasks[id];
      const auto [p, q] = config.cases[static_cast<std::size_t>(t.case_index)];
      results[id] = run_replicate(t.layers, p, q, t.replicate, config);
    }
  };
  const int jobs = std::min<int>(config.jobs, static_cast<int>(tasks.size()));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  const SummaryTable table = summarize(results, config);
  write_results(results, table, config.out_dir);
  return table;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("config file " + path + ": " + e.what());
  }

  ExperimentConfig config;
  try {
    if (j.contains("nodes")) config.num_nodes = j.at("nodes").get<int>();
    if (j.contains("communities")) config.num_communities = j.at("communities").get<int>();
    if (j.contains("layers")) config.layer_counts = j.at("layers").get<std::vector<int>>();
    if (j.contains("cases")) {
      config.cases.clear();
      for (const auto& c : j.at("cases")) {
        if (!c.is_array() || c.size() != 2)
          throw std::runtime_error("config file " + path + ": each case must be a [p,q] pair");
        config.cases.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
      }
    }
    if (j.contains("replicates")) config.replicates = j.at("replicates").get<int>();
    if (j.contains("iterations")) config.iterations = j.at("iterations").get<int>();
    if (j.contains("burn_in")) config.burn_in = j.at("burn_in").get<int>();
    if (j.contains("alpha")) config.alpha = j.at("alpha").get<std::vector<double>>();
    if (j.contains("seed")) config.master_seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("out")) config.out_dir = j.at("out").get<std::string>();
    if (j.contains("jobs")) config.jobs = j.at("jobs").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("config file " + path + ": " + e.what());
  }
  return config;
}

}  // namespace mlsbm
