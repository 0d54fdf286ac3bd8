#pragma once

// Shared fixtures and independent oracles for the test suites. The oracles
// work from genome fields and 0/1 strings only; they never call the runtime.

#include <algorithm>
#include <bit>
#include <map>
#include <string>
#include <vector>

#include "rbn/evolution.hpp"
#include "rbn/runtime.hpp"

namespace rbn::testing {

// R=6, B=2, full topology. Node 3 is a NAND fed by nodes 4 and 5 and
// structurally dynamic: controls (1, 2), all-zero control row shifts (-1, +1).
inline NetworkGenome rewiring_example() {
  NetworkGenome g;
  g.arity = 2;
  g.topology = Topology::full(6);
  g.function_set = FunctionSet::All;
  g.mode = DynamismMode::Structural;
  for (NodeId id = 1; id <= 6; ++id) {
    NodeGenome n = blank_node(2, id);
    n.function = gate_table(Gate::And, 2);
    n.inputs = {id, id % 6 + 1};
    n.structural_controls = {1, 2};
    n.functional_controls = {1, 2};
    g.nodes.push_back(n);
  }
  NodeGenome& n3 = g.node(3);
  n3.function = TruthTable::parse("1110");
  n3.inputs = {4, 5};
  n3.structural = true;
  n3.rewire.set_shift(0, 0, -1);
  n3.rewire.set_shift(0, 1, +1);
  return g;
}

// Same network with node 3 functionally dynamic instead: target bit 0 on the
// all-zero control row.
inline NetworkGenome refunc_example() {
  NetworkGenome g = rewiring_example();
  g.mode = DynamismMode::Functional;
  NodeGenome& n3 = g.node(3);
  n3.structural = false;
  n3.functional = true;
  n3.refunc = RefuncTable::parse("0111");
  return g;
}

// R nodes, all static, each reading (self, self) through `table`.
inline NetworkGenome uniform_genome(int r, const std::string& table) {
  NetworkGenome g;
  g.arity = static_cast<int>(std::countr_zero(table.size()));
  g.topology = Topology::full(r);
  g.function_set = FunctionSet::All;
  g.mode = DynamismMode::Static;
  for (NodeId id = 1; id <= r; ++id) {
    NodeGenome n = blank_node(g.arity, id);
    n.function = TruthTable::parse(table);
    g.nodes.push_back(n);
  }
  return g;
}

inline Bit table_char(const std::string& table, std::size_t index) { return table[index] == '1' ? 1 : 0; }

// Explicit copy of everything that determines a network's future.
struct Snapshot {
  std::vector<Bit> states;                 // index node-1
  std::vector<std::vector<NodeId>> inputs;  // index node-1
  std::vector<std::string> tables;         // index node-1

  friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

inline Snapshot snapshot(const RuntimeNetwork& rt) {
  Snapshot s;
  for (NodeId id = 1; id <= rt.node_count(); ++id) {
    s.states.push_back(rt.state(id));
    auto live = rt.live_inputs(id);
    s.inputs.emplace_back(live.begin(), live.end());
    s.tables.push_back(rt.live_table(id).to_string());
  }
  return s;
}

inline std::size_t oracle_index(const std::vector<Bit>& bits) {
  std::size_t index = 0;
  for (std::size_t j = 0; j < bits.size(); ++j) index += static_cast<std::size_t>(bits[j]) << (bits.size() - 1 - j);
  return index;
}

// One synchronous cycle computed from a frozen snapshot. overrides maps a
// node to the bit read through its first slot.
inline Snapshot oracle_step(const NetworkGenome& g, const Snapshot& now, const std::map<NodeId, Bit>& overrides = {}) {
  Snapshot next = now;
  for (NodeId id = 1; id <= g.node_count(); ++id) {
    const auto i = static_cast<std::size_t>(id - 1);
    std::vector<Bit> bits;
    for (NodeId src : now.inputs[i]) bits.push_back(now.states[static_cast<std::size_t>(src - 1)]);
    if (auto it = overrides.find(id); it != overrides.end()) bits[0] = it->second;
    next.states[i] = table_char(now.tables[i], oracle_index(bits));

    const NodeGenome& n = g.node(id);
    if (n.structural) {
      std::vector<Bit> ctl;
      for (NodeId c : n.structural_controls) ctl.push_back(now.states[static_cast<std::size_t>(c - 1)]);
      const auto row = oracle_index(ctl);
      for (int j = 0; j < g.arity; ++j)
        next.inputs[i][static_cast<std::size_t>(j)] =
            g.topology.shift_source(id, now.inputs[i][static_cast<std::size_t>(j)], n.rewire.shift(row, j));
    }
    if (n.functional) {
      std::vector<Bit> ctl;
      for (NodeId c : n.functional_controls) ctl.push_back(now.states[static_cast<std::size_t>(c - 1)]);
      const char target = n.refunc[oracle_index(ctl)] ? '1' : '0';
      std::string& t = next.tables[i];
      const auto pos = t.find(target == '1' ? '0' : '1');
      if (pos != std::string::npos) t[pos] = target;
    }
  }
  return next;
}

// A random genome with each dynamism flag allowed by the mode set with
// probability `flag_rate`.
inline NetworkGenome random_dynamic_genome(const GenomeParams& p, Rng& rng, double flag_rate = 0.3) {
  NetworkGenome g = random_genome(p, rng);
  const auto threshold = static_cast<std::uint64_t>(flag_rate * 1000.0);
  for (auto& n : g.nodes) {
    if (allows_structural(p.mode) && rng.below(1000) < threshold) n.structural = true;
    if (allows_functional(p.mode) && rng.below(1000) < threshold) n.functional = true;
  }
  return g;
}

inline std::vector<Bit> random_states(int r, Rng& rng) {
  std::vector<Bit> s(static_cast<std::size_t>(r));
  for (auto& b : s) b = rng.coin();
  return s;
}

}  // namespace rbn::testing
