#include "rbn/logic_tasks.hpp"

#include <ostream>
#include <string>

#include "rbn/runtime.hpp"

namespace rbn {

std::string_view to_string(LogicTask task) {
  switch (task) {
    case LogicTask::Mux6: return "mux6";
    case LogicTask::Adder2: return "adder2";
    case LogicTask::JkLatch: return "jk";
  }
  return "?";
}

LogicTask parse_logic_task(std::string_view text) {
  if (text == "mux6") return LogicTask::Mux6;
  if (text == "adder2") return LogicTask::Adder2;
  if (text == "jk") return LogicTask::JkLatch;
  throw Error("unknown logic task '" + std::string(text) + "' (expected mux6|adder2|jk)");
}

std::vector<JkInput> default_latch_sequence() { return {{1, 0}, {0, 0}, {1, 1}, {0, 1}}; }

namespace {

std::vector<NodeId> range_ids(NodeId first, int count) {
  std::vector<NodeId> out;
  for (int i = 0; i < count; ++i) out.push_back(first + i);
  return out;
}

int input_width(LogicTask task) {
  switch (task) {
    case LogicTask::Mux6: return 6;
    case LogicTask::Adder2: return 4;
    case LogicTask::JkLatch: return 2;
  }
  return 0;
}

int output_width(LogicTask task) { return task == LogicTask::Adder2 ? 3 : 1; }

std::vector<Bit> pattern_bits(std::uint32_t pattern, int width) {
  std::vector<Bit> bits(static_cast<std::size_t>(width));
  for (int j = 0; j < width; ++j) bits[static_cast<std::size_t>(j)] = (pattern >> (width - 1 - j)) & 1u;
  return bits;
}

}  // namespace

LogicTaskConfig LogicTaskConfig::defaults(LogicTask task, int node_count) {
  LogicTaskConfig cfg;
  cfg.task = task;
  cfg.input_nodes = range_ids(1, input_width(task));
  cfg.output_nodes = range_ids(node_count - output_width(task) + 1, output_width(task));
  cfg.reset_per_input = task != LogicTask::JkLatch;
  if (task == LogicTask::JkLatch) cfg.latch_sequence = default_latch_sequence();
  return cfg;
}

int LogicTaskConfig::optimum() const {
  switch (task) {
    case LogicTask::Mux6: return 64;
    case LogicTask::Adder2: return 16;
    case LogicTask::JkLatch: return static_cast<int>(latch_sequence.size());
  }
  return 0;
}

Bit mux_expected(std::span<const Bit> bits) {
  if (bits.size() != 6) throw ContractError("multiplexer takes 6 bits, got " + std::to_string(bits.size()));
  const unsigned address = 2u * bits[0] + bits[1];
  return bits[2 + address];
}

std::array<Bit, 3> adder_expected(std::array<Bit, 2> a, std::array<Bit, 2> b) {
  const unsigned sum = (2u * a[0] + a[1]) + (2u * b[0] + b[1]);
  return {static_cast<Bit>((sum >> 2) & 1u), static_cast<Bit>((sum >> 1) & 1u), static_cast<Bit>(sum & 1u)};
}

std::vector<Bit> latch_expected(std::span<const JkInput> sequence, Bit initial) {
  std::vector<Bit> out;
  Bit q = initial;
  for (const auto& in : sequence) {
    if (in.j && !in.k)
      q = 1;
    else if (!in.j && in.k)
      q = 0;
    else if (in.j && in.k)
      q ^= 1u;
    out.push_back(q);
  }
  return out;
}

std::vector<OracleRow> oracle_table(const LogicTaskConfig& cfg) {
  std::vector<OracleRow> rows;
  switch (cfg.task) {
    case LogicTask::Mux6:
      for (std::uint32_t p = 0; p < 64; ++p) {
        auto bits = pattern_bits(p, 6);
        rows.push_back({bits, {mux_expected(bits)}});
      }
      break;
    case LogicTask::Adder2:
      for (std::uint32_t p = 0; p < 16; ++p) {
        auto bits = pattern_bits(p, 4);
        const auto sum = adder_expected({bits[0], bits[1]}, {bits[2], bits[3]});
        rows.push_back({bits, {sum.begin(), sum.end()}});
      }
      break;
    case LogicTask::JkLatch: {
      const auto q = latch_expected(cfg.latch_sequence);
      for (std::size_t i = 0; i < q.size(); ++i)
        rows.push_back({{cfg.latch_sequence[i].j, cfg.latch_sequence[i].k}, {q[i]}});
      break;
    }
  }
  return rows;
}

void write_oracle_csv(const LogicTaskConfig& cfg, std::ostream& out) {
  const auto rows = oracle_table(cfg);
  out << "presentation";
  for (std::size_t i = 0; i < cfg.input_nodes.size(); ++i) out << ",in" << i + 1;
  for (std::size_t i = 0; i < cfg.output_nodes.size(); ++i) out << ",out" << i + 1;
  out << '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out << r;
    for (Bit b : rows[r].inputs) out << ',' << int{b};
    for (Bit b : rows[r].expected) out << ',' << int{b};
    out << '\n';
  }
}

namespace {

void check_config(const NetworkGenome& g, const LogicTaskConfig& cfg) {
  if (static_cast<int>(cfg.input_nodes.size()) != input_width(cfg.task))
    throw Error(std::string(to_string(cfg.task)) + " needs " + std::to_string(input_width(cfg.task)) +
                " input nodes");
  if (static_cast<int>(cfg.output_nodes.size()) != output_width(cfg.task))
    throw Error(std::string(to_string(cfg.task)) + " needs " + std::to_string(output_width(cfg.task)) +
                " output nodes");
  for (const auto* list : {&cfg.input_nodes, &cfg.output_nodes})
    for (NodeId id : *list)
      if (id < 1 || id > g.node_count())
        throw Error("task node " + std::to_string(id) + " outside genome of " + std::to_string(g.node_count()) +
                    " nodes");
  if (cfg.cycles_per_input < 0) throw Error("cycles_per_input must be >= 0");
}

}  // namespace

double evaluate_logic_task(const NetworkGenome& genome, const LogicTaskConfig& cfg, const PresentationSink& sink) {
  check_config(genome, cfg);
  const auto rows = oracle_table(cfg);
  RuntimeNetwork rt(genome);
  InputOverride ov(genome.node_count());
  const auto cycles = static_cast<std::size_t>(cfg.cycles_per_input);

  double fitness = 0.0;
  for (std::size_t p = 0; p < rows.size(); ++p) {
    const OracleRow& row = rows[p];
    if (cfg.reset_per_input || p == 0) rt.reset();
    for (std::size_t i = 0; i < row.inputs.size(); ++i) ov.set(cfg.input_nodes[i], row.inputs[i]);

    Presentation rec;
    if (sink) {
      rec.states.reserve(cycles);
      for (std::size_t c = 0; c < cycles; ++c) {
        rt.step(ov);
        rec.states.emplace_back(rt.states().begin(), rt.states().end());
      }
    } else {
      rt.run(ov, cycles);
    }

    std::size_t matched = 0;
    for (std::size_t o = 0; o < cfg.output_nodes.size(); ++o)
      if (rt.state(cfg.output_nodes[o]) == row.expected[o]) ++matched;
    const bool correct = matched == cfg.output_nodes.size();
    const double credit = cfg.partial_credit
                              ? static_cast<double>(matched) / static_cast<double>(cfg.output_nodes.size())
                              : (correct ? 1.0 : 0.0);
    fitness += credit;

    if (sink) {
      rec.index = p;
      rec.inputs = row.inputs;
      rec.expected = row.expected;
      for (NodeId id : cfg.output_nodes) rec.response.push_back(rt.state(id));
      rec.correct = correct;
      rec.credit = credit;
      sink(rec);
    }
  }
  return fitness;
}

}  // namespace rbn
