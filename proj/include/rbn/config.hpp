#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rbn/evolution.hpp"
#include "rbn/logic_tasks.hpp"
#include "rbn/surface.hpp"

namespace rbn {

enum class TaskKind { Mux6, Adder2, Jk, Surface, Attractors };

std::string_view to_string(TaskKind task);
TaskKind parse_task_kind(std::string_view text);

// Everything needed to reproduce an experiment. Keys that are omitted in the
// config text take the defaults of the chosen task.
struct ExperimentConfig {
  TaskKind task = TaskKind::Mux6;
  DynamismMode mode = DynamismMode::Structural;
  int r = 25;
  int b = 2;
  Topology topology = Topology::grid(5, 5);
  FunctionSet function_set = FunctionSet::Gates;
  std::uint64_t generations = 10000;
  int runs = 20;
  std::uint64_t seed = 1;
  std::string out = "results";

  // logic tasks
  int cycles_per_input = 10;
  bool reset_per_input = true;
  std::vector<JkInput> latch_sequence;
  bool partial_credit = false;

  // surface
  bool signed_fitness = true;
  int cell_indexing = 0;
  int cycles_per_step = 10;
  int steps_per_scenario = 10;

  // attractors (runs = networks per arity)
  std::vector<int> b_list;
  std::uint64_t horizon = 5000;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// The task's defaults; these reproduce the published settings.
ExperimentConfig default_config(TaskKind task);

// Flat `key = value` lines; `#` starts a comment. Throws ParseError (with the
// line) for syntax errors, unknown or repeated keys and bad values, and Error
// for invalid key combinations.
ExperimentConfig parse_config(std::string_view text);

// Throws Error describing the first invalid combination.
void check_config(const ExperimentConfig& cfg);

// Canonical text: fixed key order, only keys meaningful for the task.
// parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& cfg, bool include_output = true);

// FNV-1a over the canonical text without the output directory.
std::uint64_t config_hash(const ExperimentConfig& cfg);

GenomeParams genome_params(const ExperimentConfig& cfg);
LogicTaskConfig logic_config(const ExperimentConfig& cfg);
SurfaceConfig surface_config(const ExperimentConfig& cfg);
bool is_logic_task(TaskKind task);

// Fitness function of an evolution task; throws Error for `attractors`.
Evaluator make_evaluator(const ExperimentConfig& cfg);

}  // namespace rbn
