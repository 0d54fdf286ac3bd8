#include "rbn/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "rbn/serialize.hpp"

namespace rbn {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

std::string run_dir_name(int run) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "run_%03d", run);
  return buf;
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Calls body(i) for i in [0, n) on up to `threads` workers; rethrows the
// failure of the lowest index.
template <class Body>
void parallel_for(int n, unsigned threads, Body body) {
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };
  const unsigned count = std::max(1u, std::min(threads, static_cast<unsigned>(std::max(n, 1))));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

AttractorSurveyConfig survey_config(const ExperimentConfig& c) {
  return {c.r, c.b_list, c.runs, c.horizon, c.seed};
}

}  // namespace

ExperimentResult run_climbs(const ExperimentConfig& cfg, const RunOptions& options) {
  check_config(cfg);
  const Evaluator evaluate = make_evaluator(cfg);
  const GenomeParams params = genome_params(cfg);
  ExperimentResult result;
  result.runs.resize(static_cast<std::size_t>(cfg.runs));
  result.histories.resize(static_cast<std::size_t>(cfg.runs));
  parallel_for(cfg.runs, options.threads, [&](int run) {
    const std::uint64_t seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(run));
    Rng rng(seed);
    ClimbHistory h;
    try {
      h = hill_climb(evaluate, params, cfg.generations, rng);
    } catch (const std::exception& e) {
      throw Error("run " + std::to_string(run) + ": " + e.what());
    }
    const auto i = static_cast<std::size_t>(run);
    result.runs[i] = {run, seed, h.best_eval.fitness, h.best_eval.dynamic_count};
    result.histories[i] = std::move(h);
  });
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& options) {
  check_config(cfg);
  const fs::path dir = cfg.out;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());

  const std::string started = utc_now();
  write_file(dir / "config.txt", serialize_config(cfg, false));

  ExperimentResult result;
  if (cfg.task == TaskKind::Attractors) {
    std::ostringstream csv;
    write_attractor_csv(attractor_survey(survey_config(cfg)), csv);
    write_file(dir / "attractors.csv", csv.str());
  } else {
    result = run_climbs(cfg, options);
    std::string summary = "run,seed,final_fitness,dynamic_count\n";
    for (std::size_t i = 0; i < result.runs.size(); ++i) {
      const auto& r = result.runs[i];
      summary += std::to_string(r.run) + ',' + std::to_string(r.seed) + ',' + format_fitness(r.final_fitness) + ',' +
                 std::to_string(r.dynamic_count) + '\n';
      const fs::path run_dir = dir / run_dir_name(r.run);
      fs::create_directories(run_dir, ec);
      if (ec) throw Error("cannot create " + run_dir.string() + ": " + ec.message());
      if (options.write_histories) {
        std::ostringstream hist;
        result.histories[i].write_csv(hist);
        write_file(run_dir / "history.csv", hist.str());
      }
      write_file(run_dir / "best_genome.json", serialize_genome(result.histories[i].best));
    }
    write_file(dir / "summary.csv", summary);
  }

  nlohmann::ordered_json meta{{"started", started},
                              {"finished", utc_now()},
                              {"threads", options.threads},
                              {"config_hash", config_hash(cfg)}};
  write_file(dir / "metadata.json", meta.dump(2) + "\n");
  return result;
}

std::vector<AttractorSummary> attractor_survey(const AttractorSurveyConfig& cfg) {
  std::vector<AttractorSummary> out;
  for (int arity : cfg.arities) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(arity)));
    const GenomeParams params{cfg.node_count, arity, Topology::full(cfg.node_count), FunctionSet::All,
                              DynamismMode::Static};
    std::vector<double> transients;
    std::vector<double> cycles;
    double censored = 0.0;
    int truncated = 0;
    for (int run = 0; run < cfg.runs; ++run) {
      const NetworkGenome g = random_genome(params, rng);
      std::vector<Bit> start(static_cast<std::size_t>(cfg.node_count));
      for (auto& b : start) b = rng.coin();
      const AttractorStats s = detect_attractor(RuntimeNetwork(g, start), cfg.horizon);
      if (s.truncated) {
        ++truncated;
        censored += static_cast<double>(cfg.horizon);
      } else {
        transients.push_back(static_cast<double>(s.transient_length));
        cycles.push_back(static_cast<double>(s.cycle_length));
        censored += static_cast<double>(s.cycle_length);
      }
    }
    AttractorSummary row;
    row.arity = arity;
    row.runs = cfg.runs;
    row.mean_transient = mean(transients);
    row.median_transient = median(transients);
    row.mean_cycle = mean(cycles);
    row.median_cycle = median(cycles);
    row.censored_mean_cycle = cfg.runs ? censored / cfg.runs : 0.0;
    row.truncation_rate = cfg.runs ? static_cast<double>(truncated) / cfg.runs : 0.0;
    out.push_back(row);
  }
  return out;
}

void write_attractor_csv(const std::vector<AttractorSummary>& rows, std::ostream& out) {
  out << "b,runs,mean_transient,median_transient,mean_cycle,median_cycle,censored_mean_cycle,truncation_rate\n";
  for (const auto& r : rows)
    out << r.arity << ',' << r.runs << ',' << format_fitness(r.mean_transient) << ','
        << format_fitness(r.median_transient) << ',' << format_fitness(r.mean_cycle) << ','
        << format_fitness(r.median_cycle) << ',' << format_fitness(r.censored_mean_cycle) << ','
        << format_fitness(r.truncation_rate) << '\n';
}

namespace {

std::string bit_string(std::span<const Bit> bits) {
  std::string s;
  for (Bit b : bits) s += static_cast<char>('0' + b);
  return s;
}

std::vector<int> numbered_cells(const ObjectPlacement& p, const SurfaceConfig& sc) {
  auto cells = p.cells(sc.cols);
  for (int& c : cells) c += sc.cell_indexing;
  return cells;
}

}  // namespace

double replay(const NetworkGenome& genome, const ExperimentConfig& cfg, std::ostream& trace) {
  using nlohmann::ordered_json;
  double fitness = 0.0;
  if (is_logic_task(cfg.task)) {
    fitness = evaluate_logic_task(genome, logic_config(cfg), [&](const Presentation& p) {
      ordered_json states = ordered_json::array();
      for (const auto& s : p.states) states.push_back(bit_string(s));
      ordered_json rec{{"type", "presentation"}, {"index", p.index},       {"inputs", p.inputs},
                       {"expected", p.expected}, {"response", p.response}, {"correct", p.correct},
                       {"credit", p.credit},     {"states", std::move(states)}};
      trace << rec.dump() << '\n';
    });
  } else if (cfg.task == TaskKind::Surface) {
    const SurfaceConfig sc = surface_config(cfg);
    const std::pair<const char*, ObjectSpec> scenarios[] = {{"north_3x1", ObjectSpec::north_3x1()},
                                                            {"south_5x1", ObjectSpec::south_5x1()}};
    for (const auto& [name, obj] : scenarios) {
      const ScenarioResult r = run_scenario(genome, obj, sc, [&](const StepRecord& s) {
        ordered_json decisions = ordered_json::array();
        for (Direction d : s.decisions) decisions.push_back(std::string(to_string(d)));
        ordered_json rec{{"type", "step"}, {"scenario", name},
                         {"step", s.step},  {"cells", s.cells},
                         {"decisions", std::move(decisions)}, {"moved", s.moved}};
        trace << rec.dump() << '\n';
      });
      const int score = scenario_fitness(r, sc);
      fitness += score;
      ordered_json rec{{"type", "scenario"},
                       {"scenario", name},
                       {"displacement", r.displacement},
                       {"distance", r.distance},
                       {"final_cells", numbered_cells(r.final_placement, sc)},
                       {"fitness", score}};
      trace << rec.dump() << '\n';
    }
  } else {
    throw Error("replay needs an evolution task, not '" + std::string(to_string(cfg.task)) + "'");
  }
  trace << ordered_json{{"type", "result"}, {"fitness", fitness}}.dump() << '\n';
  return fitness;
}

}  // namespace rbn
