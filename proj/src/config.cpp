#include "rbn/config.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "rbn/serialize.hpp"

namespace rbn {

std::string_view to_string(TaskKind task) {
  switch (task) {
    case TaskKind::Mux6: return "mux6";
    case TaskKind::Adder2: return "adder2";
    case TaskKind::Jk: return "jk";
    case TaskKind::Surface: return "surface";
    case TaskKind::Attractors: return "attractors";
  }
  return "?";
}

TaskKind parse_task_kind(std::string_view text) {
  if (text == "mux6") return TaskKind::Mux6;
  if (text == "adder2") return TaskKind::Adder2;
  if (text == "jk") return TaskKind::Jk;
  if (text == "surface") return TaskKind::Surface;
  if (text == "attractors") return TaskKind::Attractors;
  throw Error("unknown task '" + std::string(text) + "' (expected mux6|adder2|jk|surface|attractors)");
}

bool is_logic_task(TaskKind task) {
  return task == TaskKind::Mux6 || task == TaskKind::Adder2 || task == TaskKind::Jk;
}

ExperimentConfig default_config(TaskKind task) {
  ExperimentConfig c;
  c.task = task;
  switch (task) {
    case TaskKind::Mux6:
    case TaskKind::Adder2:
    case TaskKind::Jk:
      c.reset_per_input = task != TaskKind::Jk;
      if (task == TaskKind::Jk) c.latch_sequence = default_latch_sequence();
      break;
    case TaskKind::Surface:
      c.mode = DynamismMode::Both;
      c.r = 20;
      c.topology = Topology::full(20);
      c.function_set = FunctionSet::All;
      break;
    case TaskKind::Attractors:
      c.mode = DynamismMode::Static;
      c.r = 100;
      c.topology = Topology::full(100);
      c.function_set = FunctionSet::All;
      c.runs = 100;
      c.b_list = {1, 2, 4, 5};
      c.b = 1;
      break;
  }
  return c;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view v, int line, std::string_view key) {
  T out{};
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw ParseError(line, std::string(key) + ": '" + std::string(v) + "' is not a valid number");
  return out;
}

bool parse_bool(std::string_view v, int line, std::string_view key) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ParseError(line, std::string(key) + ": expected true or false");
}

std::vector<std::string_view> split(std::string_view v, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const auto pos = v.find(sep);
    out.push_back(trim(v.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    v.remove_prefix(pos + 1);
  }
  return out;
}

std::vector<JkInput> parse_latch(std::string_view v, int line) {
  std::vector<JkInput> out;
  for (auto item : split(v, ',')) {
    if (item.size() != 2 || (item[0] != '0' && item[0] != '1') || (item[1] != '0' && item[1] != '1'))
      throw ParseError(line, "latch_sequence: entries are JK bit pairs such as 10,00,11,01");
    out.push_back({static_cast<Bit>(item[0] - '0'), static_cast<Bit>(item[1] - '0')});
  }
  return out;
}

std::string latch_text(const std::vector<JkInput>& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out += ',';
    out += static_cast<char>('0' + seq[i].j);
    out += static_cast<char>('0' + seq[i].k);
  }
  return out;
}

// Grid when the node count is a square (the published logic setting), full
// otherwise.
Topology natural_topology(const ExperimentConfig& c) {
  if (is_logic_task(c.task)) {
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(c.r))));
    if (side * side == c.r && side >= 2) return Topology::grid(side, side);
  }
  return Topology::full(c.r);
}

const std::set<std::string_view>& known_keys() {
  static const std::set<std::string_view> keys{
      "task",        "mode",           "r",          "b",           "topology",        "function_set",
      "generations", "runs",           "seed",       "out",         "cycles_per_input", "reset_per_input",
      "latch_sequence", "partial_credit", "fitness", "cell_indexing", "cycles_per_step", "steps_per_scenario",
      "b_list",      "horizon"};
  return keys;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  struct Entry {
    std::string value;
    int line;
  };
  std::map<std::string, Entry, std::less<>> entries;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "missing key before '='");
    if (!known_keys().contains(key)) throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
    if (value.empty()) throw ParseError(line_no, std::string(key) + ": missing value");
    if (!entries.emplace(std::string(key), Entry{std::string(value), line_no}).second)
      throw ParseError(line_no, "key '" + std::string(key) + "' given twice");
  }

  auto task_it = entries.find("task");
  if (task_it == entries.end()) throw ParseError(line_no, "missing required key 'task'");
  ExperimentConfig c;
  try {
    c = default_config(parse_task_kind(task_it->second.value));
  } catch (const Error& e) {
    throw ParseError(task_it->second.line, e.what());
  }

  bool topology_given = false;
  bool r_given = false;
  for (const auto& [key, entry] : entries) {
    const std::string_view v = entry.value;
    const int ln = entry.line;
    try {
      if (key == "task") continue;
      if (key == "mode") c.mode = parse_dynamism_mode(v);
      else if (key == "r") { c.r = parse_number<int>(v, ln, key); r_given = true; }
      else if (key == "b") c.b = parse_number<int>(v, ln, key);
      else if (key == "topology") { c.topology = topology_from_json(v); topology_given = true; }
      else if (key == "function_set") c.function_set = parse_function_set(v);
      else if (key == "generations") c.generations = parse_number<std::uint64_t>(v, ln, key);
      else if (key == "runs") c.runs = parse_number<int>(v, ln, key);
      else if (key == "seed") c.seed = parse_number<std::uint64_t>(v, ln, key);
      else if (key == "out") c.out = std::string(v);
      else if (key == "cycles_per_input") c.cycles_per_input = parse_number<int>(v, ln, key);
      else if (key == "reset_per_input") c.reset_per_input = parse_bool(v, ln, key);
      else if (key == "latch_sequence") c.latch_sequence = parse_latch(v, ln);
      else if (key == "partial_credit") c.partial_credit = parse_bool(v, ln, key);
      else if (key == "fitness") {
        if (v == "signed") c.signed_fitness = true;
        else if (v == "unsigned") c.signed_fitness = false;
        else throw ParseError(ln, "fitness: expected signed or unsigned");
      }
      else if (key == "cell_indexing") c.cell_indexing = parse_number<int>(v, ln, key);
      else if (key == "cycles_per_step") c.cycles_per_step = parse_number<int>(v, ln, key);
      else if (key == "steps_per_scenario") c.steps_per_scenario = parse_number<int>(v, ln, key);
      else if (key == "b_list") {
        c.b_list.clear();
        for (auto item : split(v, ',')) c.b_list.push_back(parse_number<int>(item, ln, key));
      }
      else if (key == "horizon") c.horizon = parse_number<std::uint64_t>(v, ln, key);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(ln, std::string(key) + ": " + e.what());
    }
  }
  if (r_given && !topology_given) c.topology = natural_topology(c);
  if (!r_given && topology_given) c.r = c.topology.node_count();
  check_config(c);
  return c;
}

void check_config(const ExperimentConfig& c) {
  auto fail = [](const std::string& msg) { throw Error("invalid configuration: " + msg); };
  if (c.r < 1) fail("r must be >= 1");
  if (c.topology.node_count() != c.r)
    fail("topology has " + std::to_string(c.topology.node_count()) + " nodes but r = " + std::to_string(c.r));
  if (c.runs < 1) fail("runs must be >= 1");
  if (c.task == TaskKind::Attractors) {
    if (c.mode != DynamismMode::Static) fail("the attractor survey runs static networks only (mode = static)");
    if (c.b_list.empty()) fail("b_list must name at least one arity");
    for (int b : c.b_list)
      if (b < 1 || b > kMaxArity) fail("b_list entries must be in 1..6");
    if (c.horizon < 1) fail("horizon must be >= 1");
    if (c.topology.kind() != TopologyKind::Full) fail("the attractor survey uses the full topology");
    return;
  }
  if (c.b < 1 || c.b > kMaxArity) fail("b must be in 1..6");
  if (c.function_set == FunctionSet::Gates && c.b < 2) fail("the gate set needs b >= 2");
  if (c.task == TaskKind::Surface) {
    if (c.function_set == FunctionSet::Gates)
      fail("the surface task evolves unrestricted functions; function_set = gates is not supported");
    surface_config(c).validate();
    if (c.cycles_per_step < 0 || c.steps_per_scenario < 0) fail("surface budgets must be >= 0");
    return;
  }
  const auto lc = logic_config(c);
  const auto needed = static_cast<int>(lc.input_nodes.size() + lc.output_nodes.size());
  if (c.r < needed) fail(std::string(to_string(c.task)) + " needs at least " + std::to_string(needed) + " nodes");
  if (c.cycles_per_input < 0) fail("cycles_per_input must be >= 0");
  if (c.task == TaskKind::Jk && c.latch_sequence.empty()) fail("latch_sequence must not be empty");
}

std::string serialize_config(const ExperimentConfig& c, bool include_output) {
  std::ostringstream out;
  out << "task = " << to_string(c.task) << '\n';
  out << "mode = " << to_string(c.mode) << '\n';
  out << "r = " << c.r << '\n';
  out << "topology = " << topology_to_json(c.topology) << '\n';
  out << "function_set = " << to_string(c.function_set) << '\n';
  if (c.task == TaskKind::Attractors) {
    out << "b_list = ";
    for (std::size_t i = 0; i < c.b_list.size(); ++i) out << (i ? "," : "") << c.b_list[i];
    out << '\n';
    out << "horizon = " << c.horizon << '\n';
  } else {
    out << "b = " << c.b << '\n';
    out << "generations = " << c.generations << '\n';
  }
  out << "runs = " << c.runs << '\n';
  out << "seed = " << c.seed << '\n';
  if (is_logic_task(c.task)) {
    out << "cycles_per_input = " << c.cycles_per_input << '\n';
    out << "reset_per_input = " << (c.reset_per_input ? "true" : "false") << '\n';
    out << "partial_credit = " << (c.partial_credit ? "true" : "false") << '\n';
    if (c.task == TaskKind::Jk) out << "latch_sequence = " << latch_text(c.latch_sequence) << '\n';
  }
  if (c.task == TaskKind::Surface) {
    out << "fitness = " << (c.signed_fitness ? "signed" : "unsigned") << '\n';
    out << "cell_indexing = " << c.cell_indexing << '\n';
    out << "cycles_per_step = " << c.cycles_per_step << '\n';
    out << "steps_per_scenario = " << c.steps_per_scenario << '\n';
  }
  if (include_output) out << "out = " << c.out << '\n';
  return out.str();
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : serialize_config(cfg, false)) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

GenomeParams genome_params(const ExperimentConfig& c) {
  return {c.r, c.b, c.topology, c.function_set, c.mode};
}

LogicTaskConfig logic_config(const ExperimentConfig& c) {
  const LogicTask task = c.task == TaskKind::Mux6     ? LogicTask::Mux6
                         : c.task == TaskKind::Adder2 ? LogicTask::Adder2
                                                      : LogicTask::JkLatch;
  auto lc = LogicTaskConfig::defaults(task, c.r);
  lc.cycles_per_input = c.cycles_per_input;
  lc.reset_per_input = c.reset_per_input;
  lc.partial_credit = c.partial_credit;
  if (task == LogicTask::JkLatch) lc.latch_sequence = c.latch_sequence;
  return lc;
}

SurfaceConfig surface_config(const ExperimentConfig& c) {
  SurfaceConfig s;
  s.node_count = c.r;
  s.arity = c.b;
  s.signed_fitness = c.signed_fitness;
  s.cell_indexing = c.cell_indexing;
  s.reference_cell = 76;
  s.cycles_per_step = c.cycles_per_step;
  s.steps_per_scenario = c.steps_per_scenario;
  return s;
}

Evaluator make_evaluator(const ExperimentConfig& c) {
  if (is_logic_task(c.task)) {
    auto lc = logic_config(c);
    return [lc](const NetworkGenome& g) { return evaluate_logic_task(g, lc); };
  }
  if (c.task == TaskKind::Surface) {
    auto sc = surface_config(c);
    return [sc](const NetworkGenome& g) { return evaluate_surface(g, sc); };
  }
  throw Error("task '" + std::string(to_string(c.task)) + "' has no fitness function");
}

}  // namespace rbn
