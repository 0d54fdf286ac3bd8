#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "rbn/genome.hpp"

namespace rbn {

enum class LogicTask { Mux6, Adder2, JkLatch };

std::string_view to_string(LogicTask task);  // mux6 | adder2 | jk
LogicTask parse_logic_task(std::string_view text);

struct JkInput {
  Bit j = 0;
  Bit k = 0;
  friend bool operator==(const JkInput&, const JkInput&) = default;
};

// (1,0), (0,0), (1,1), (0,1): set, hold, toggle, reset.
std::vector<JkInput> default_latch_sequence();

struct LogicTaskConfig {
  LogicTask task = LogicTask::Mux6;
  std::vector<NodeId> input_nodes;   // input bit i drives node input_nodes[i]
  std::vector<NodeId> output_nodes;  // read MSB first
  int cycles_per_input = 10;
  bool reset_per_input = true;
  std::vector<JkInput> latch_sequence;
  bool partial_credit = false;  // adder: credit per matching output bit

  // Inputs on the lowest ids, outputs on the highest ids of an R-node network.
  static LogicTaskConfig defaults(LogicTask task, int node_count = 25);
  int optimum() const;
};

// bits = (a1, a0, d0, d1, d2, d3); returns d[2*a1 + a0].
Bit mux_expected(std::span<const Bit> bits);
// MSB-first operands, MSB-first 3-bit sum.
std::array<Bit, 3> adder_expected(std::array<Bit, 2> a, std::array<Bit, 2> b);
// Q after each presentation, starting from `initial`.
std::vector<Bit> latch_expected(std::span<const JkInput> sequence, Bit initial = 0);

struct OracleRow {
  std::vector<Bit> inputs;
  std::vector<Bit> expected;
};

// Presentations in evaluation order: ascending binary input patterns for the
// combinational tasks, the latch sequence for the JK latch.
std::vector<OracleRow> oracle_table(const LogicTaskConfig& cfg);
void write_oracle_csv(const LogicTaskConfig& cfg, std::ostream& out);

struct Presentation {
  std::size_t index = 0;
  std::vector<Bit> inputs;
  std::vector<Bit> expected;
  std::vector<Bit> response;
  bool correct = false;
  double credit = 0.0;
  std::vector<std::vector<Bit>> states;  // network states after each cycle
};

using PresentationSink = std::function<void(const Presentation&)>;

// Sum of per-presentation credit, in [0, optimum]. Throws Error when the
// configuration does not fit the genome.
double evaluate_logic_task(const NetworkGenome& genome, const LogicTaskConfig& cfg,
                           const PresentationSink& sink = {});

}  // namespace rbn
