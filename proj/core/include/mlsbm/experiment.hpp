#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace mlsbm {

struct ExperimentConfig {
  int num_nodes = 100;
  int num_communities = 2;
  std::vector<int> layer_counts = {1, 3, 5, 7};
  std::vector<std::pair<double, double>> cases = {{0.3, 0.2}, {0.15, 0.1}};
  int replicates = 10;
  int iterations = 1100;
  int burn_in = 1000;
  std::vector<double> alpha = {200.0, 200.0};
  std::uint64_t master_seed = 1;
  std::string out_dir = "results";
  int jobs = 1;
};

void validate_config(const ExperimentConfig& config);

struct ReplicateResult {
  int case_index = 0;  // 1-based position in the configured case list, 0 if ad hoc
  double p = 0.0;
  double q = 0.0;
  int layers = 0;
  int replicate = 0;  // 1-based
  double classification_error = 0.0;  // misclassified fraction after relabelling
  double adjusted_rand = 0.0;
  std::uint64_t seed = 0;
  double seconds = 0.0;
};

struct SummaryCell {
  int case_index = 0;
  double p = 0.0;
  double q = 0.0;
  int layers = 0;
  int replicates = 0;
  double ce_mean = 0.0;
  double ce_sd = 0.0;
  double ar_mean = 0.0;
  double ar_sd = 0.0;
};

struct SummaryTable {
  std::vector<SummaryCell> cells;
};

// Stable per-replicate seed: folds the cell coordinates (layer count, case
// probabilities bit-exactly, replicate index) into the master seed, so any
// replicate can be reproduced in isolation and in any order.
std::uint64_t replicate_seed(std::uint64_t master, int layers, double p, double q,
                             int replicate_index);

// One full pipeline run: planted two-block truth, sampled network, Gibbs
// chain, point estimate, scores against the truth. replicate_index is 0-based.
ReplicateResult run_replicate(int layers, double p, double q, int replicate_index,
                              const ExperimentConfig& config);

// All replicates of one (layers, case) cell, sequentially.
std::vector<ReplicateResult> run_cell(int layers, double p, double q,
                                      const ExperimentConfig& config);

// Mean and sample standard deviation of the scores per cell, in the order the
// cells appear in the config.
SummaryTable summarize(const std::vector<ReplicateResult>& results,
                       const ExperimentConfig& config);

// Writes replicates.csv / summary.csv and their JSON twins into out_dir.
void write_results(const std::vector<ReplicateResult>& results, const SummaryTable& table,
                   const std::string& out_dir);

// Full study over every configured cell, parallel over replicates up to
// config.jobs. Persists results into config.out_dir and returns the summary.
// Identical config and master seed give identical scores at any jobs value;
// only the wall-time column varies.
SummaryTable reproduce_table1(const ExperimentConfig& config);

// JSON config file; missing keys keep their defaults.
ExperimentConfig load_experiment_config(const std::string& path);

}  // namespace mlsbm
