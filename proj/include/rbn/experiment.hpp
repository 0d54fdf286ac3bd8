#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "rbn/config.hpp"

namespace rbn {

struct RunSummary {
  int run = 0;
  std::uint64_t seed = 0;
  double final_fitness = 0.0;
  int dynamic_count = 0;
};

struct RunOptions {
  unsigned threads = 1;
  bool write_histories = true;
};

struct ExperimentResult {
  std::vector<RunSummary> runs;
  std::vector<ClimbHistory> histories;  // index = run
};

// One hill climb per run with seed derive_seed(cfg.seed, run). Writes into
// cfg.out:
//   config.txt               resolved canonical config
//   summary.csv              run,seed,final_fitness,dynamic_count
//   run_NNN/history.csv      per-generation curve
//   run_NNN/best_genome.json
//   metadata.json            timestamps and thread count (not reproducible)
// The attractor task writes attractors.csv instead of runs. Everything except
// metadata.json is byte-identical for identical configs.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& options = {});

// Runs the climbs without touching the filesystem.
ExperimentResult run_climbs(const ExperimentConfig& cfg, const RunOptions& options = {});

struct AttractorSummary {
  int arity = 0;
  int runs = 0;
  double mean_transient = 0.0;   // over untruncated runs
  double median_transient = 0.0;
  double mean_cycle = 0.0;
  double median_cycle = 0.0;
  double censored_mean_cycle = 0.0;  // truncated runs counted as the horizon
  double truncation_rate = 0.0;
};

struct AttractorSurveyConfig {
  int node_count = 100;
  std::vector<int> arities{1, 2, 4, 5};
  int runs = 100;
  std::uint64_t horizon = 5000;
  std::uint64_t seed = 1;
};

// Random static networks (full topology, unrestricted functions, random start
// states) per arity.
std::vector<AttractorSummary> attractor_survey(const AttractorSurveyConfig& cfg);
void write_attractor_csv(const std::vector<AttractorSummary>& rows, std::ostream& out);

// Evaluates `genome` once on the task, writing one JSON record per line to
// `trace`. Returns the same fitness as the task's evaluator.
double replay(const NetworkGenome& genome, const ExperimentConfig& task_cfg, std::ostream& trace);

}  // namespace rbn
