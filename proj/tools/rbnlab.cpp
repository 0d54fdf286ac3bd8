// Command-line front end: evolve, surface-eval, attractors, replay, validate,
// oracle. Failures print one JSON object on stderr and exit non-zero.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rbn/experiment.hpp"
#include "rbn/serialize.hpp"

namespace {

using nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw rbn::Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int fail(const std::string& kind, const std::string& message, ordered_json extra = ordered_json::object()) {
  ordered_json err{{"kind", kind}, {"message", message}};
  for (auto& [k, v] : extra.items()) err[k] = v;
  std::cerr << ordered_json{{"error", err}}.dump() << '\n';
  return 1;
}

rbn::ExperimentConfig task_config(const std::string& task, const std::string& config_path, int node_count) {
  if (!config_path.empty()) return rbn::parse_config(read_file(config_path));
  std::string text = "task = " + task + "\n";
  if (node_count > 0) text += "r = " + std::to_string(node_count) + "\n";
  return rbn::parse_config(text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random Boolean network laboratory with structural and functional dynamism"};
  app.require_subcommand(1);

  auto* evolve = app.add_subcommand("evolve", "Run seeded hill climbs described by a config file");
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> runs;
  std::optional<std::uint64_t> generations;
  std::string out_dir;
  unsigned threads = 1;
  evolve->add_option("--config", config_path, "Config file (key = value lines)")->required();
  evolve->add_option("--seed", seed, "Master seed");
  evolve->add_option("--runs", runs, "Independent runs");
  evolve->add_option("--generations", generations, "Generations per run");
  evolve->add_option("--out", out_dir, "Output directory");
  evolve->add_option("--threads", threads, "Worker threads (results do not depend on it)");

  auto* surface_eval = app.add_subcommand("surface-eval", "Score a controller genome on the smart surface");
  std::string genome_path;
  surface_eval->add_option("--genome", genome_path, "Genome file")->required();
  surface_eval->add_option("--config", config_path, "Surface config file");

  auto* attractors = app.add_subcommand("attractors", "Attractor survey of random static networks");
  int r = 100;
  std::vector<int> b_list{1, 2, 4, 5};
  int survey_runs = 100;
  std::uint64_t horizon = 5000;
  std::uint64_t survey_seed = 1;
  attractors->add_option("--r", r, "Nodes per network");
  attractors->add_option("--b", b_list, "Connectivities, comma separated")->delimiter(',');
  attractors->add_option("--runs", survey_runs, "Networks per connectivity");
  attractors->add_option("--horizon", horizon, "Maximum cycles per network");
  attractors->add_option("--seed", survey_seed, "Master seed");

  auto* replay = app.add_subcommand("replay", "Evaluate a genome once and write a per-cycle trace");
  std::string task;
  std::string trace_path;
  replay->add_option("--genome", genome_path, "Genome file")->required();
  replay->add_option("--task", task, "mux6 | adder2 | jk | surface")->required();
  replay->add_option("--trace", trace_path, "Trace output (JSON lines)")->required();
  replay->add_option("--config", config_path, "Task config overriding the defaults");

  auto* validate = app.add_subcommand("validate", "Check a genome file against its topology and mode");
  validate->add_option("--genome", genome_path, "Genome file")->required();

  auto* oracle = app.add_subcommand("oracle", "Print the expected outputs of a logic task as CSV");
  oracle->add_option("--task", task, "mux6 | adder2 | jk")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (evolve->parsed()) {
      rbn::ExperimentConfig cfg = rbn::parse_config(read_file(config_path));
      if (seed) cfg.seed = *seed;
      if (runs) cfg.runs = *runs;
      if (generations) cfg.generations = *generations;
      if (!out_dir.empty()) cfg.out = out_dir;
      const auto result = rbn::run_experiment(cfg, {threads, true});
      ordered_json summary = ordered_json::array();
      for (const auto& run : result.runs)
        summary.push_back({{"run", run.run}, {"fitness", run.final_fitness}, {"dynamic_count", run.dynamic_count}});
      std::cout << ordered_json{{"out", cfg.out}, {"runs", summary}}.dump() << '\n';
    } else if (surface_eval->parsed()) {
      const auto genome = rbn::deserialize_genome(read_file(genome_path));
      rbn::require_valid(genome);
      const auto cfg = task_config("surface", config_path, genome.node_count());
      const auto sc = rbn::surface_config(cfg);
      const int north = rbn::scenario_fitness(rbn::run_scenario(genome, rbn::ObjectSpec::north_3x1(), sc), sc);
      const int south = rbn::scenario_fitness(rbn::run_scenario(genome, rbn::ObjectSpec::south_5x1(), sc), sc);
      std::cout << ordered_json{{"north_3x1", north}, {"south_5x1", south}, {"fitness", north + south}}.dump()
                << '\n';
    } else if (attractors->parsed()) {
      rbn::AttractorSurveyConfig cfg{r, b_list, survey_runs, horizon, survey_seed};
      for (int b : b_list)
        if (b < 1 || b > rbn::kMaxArity) throw rbn::Error("--b entries must be in 1..6");
      rbn::write_attractor_csv(rbn::attractor_survey(cfg), std::cout);
    } else if (replay->parsed()) {
      const auto genome = rbn::deserialize_genome(read_file(genome_path));
      rbn::require_valid(genome);
      auto cfg = task_config(task, config_path, genome.node_count());
      if (!config_path.empty() && rbn::to_string(cfg.task) != task)
        throw rbn::Error("config is for task '" + std::string(rbn::to_string(cfg.task)) + "', not '" + task + "'");
      std::ofstream trace(trace_path, std::ios::binary);
      if (!trace) throw rbn::Error("cannot open " + trace_path + " for writing");
      const double fitness = rbn::replay(genome, cfg, trace);
      std::cout << ordered_json{{"task", task}, {"fitness", fitness}}.dump() << '\n';
    } else if (validate->parsed()) {
      const auto genome = rbn::deserialize_genome(read_file(genome_path));
      const auto violations = rbn::validate_genome(genome);
      if (!violations.empty()) {
        ordered_json list = ordered_json::array();
        for (const auto& v : violations) list.push_back({{"node", v.node}, {"field", v.field}, {"message", v.message}});
        return fail("validation", "genome violates its constraints", {{"violations", list}});
      }
      std::cout << ordered_json{{"valid", true}, {"r", genome.node_count()}, {"dynamic_count", genome.dynamic_count()}}
                       .dump()
                << '\n';
    } else if (oracle->parsed()) {
      rbn::write_oracle_csv(rbn::LogicTaskConfig::defaults(rbn::parse_logic_task(task)), std::cout);
    }
  } catch (const rbn::ParseError& e) {
    return fail("parse", e.what(), {{"line", e.line()}});
  } catch (const rbn::SchemaError& e) {
    return fail("schema", e.what(), {{"path", e.path()}});
  } catch (const rbn::ValidationError& e) {
    ordered_json list = ordered_json::array();
    for (const auto& v : e.violations()) list.push_back({{"node", v.node}, {"field", v.field}, {"message", v.message}});
    return fail("validation", "genome violates its constraints", {{"violations", list}});
  } catch (const std::exception& e) {
    return fail("error", e.what());
  }
  return 0;
}
