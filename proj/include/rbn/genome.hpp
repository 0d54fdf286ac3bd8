#pragma once

#include <string_view>
#include <vector>

#include "rbn/errors.hpp"
#include "rbn/topology.hpp"
#include "rbn/truth_table.hpp"

namespace rbn {

enum class FunctionSet { All, Gates };

// Which dynamism flags mutation is allowed to set.
enum class DynamismMode { Static, Structural, Functional, Both };

std::string_view to_string(FunctionSet set);
std::string_view to_string(DynamismMode mode);
FunctionSet parse_function_set(std::string_view text);
DynamismMode parse_dynamism_mode(std::string_view text);

inline bool allows_structural(DynamismMode m) {
  return m == DynamismMode::Structural || m == DynamismMode::Both;
}
inline bool allows_functional(DynamismMode m) {
  return m == DynamismMode::Functional || m == DynamismMode::Both;
}

// Heritable description of one node. Control lists and tables are always
// allocated so that toggling a flag never creates new material.
struct NodeGenome {
  TruthTable function;
  std::vector<NodeId> inputs;

  bool structural = false;
  std::vector<NodeId> structural_controls;
  RewireTable rewire;

  bool functional = false;
  std::vector<NodeId> functional_controls;
  RefuncTable refunc;

  int dynamic_flags() const { return int{structural} + int{functional}; }

  friend bool operator==(const NodeGenome&, const NodeGenome&) = default;
};

struct NetworkGenome {
  int arity = 2;
  Topology topology;
  FunctionSet function_set = FunctionSet::All;
  DynamismMode mode = DynamismMode::Static;
  std::vector<NodeGenome> nodes;

  int node_count() const { return static_cast<int>(nodes.size()); }
  const NodeGenome& node(NodeId id) const { return nodes[static_cast<std::size_t>(id - 1)]; }
  NodeGenome& node(NodeId id) { return nodes[static_cast<std::size_t>(id - 1)]; }

  // Number of set dynamism flags over all nodes.
  int dynamic_count() const;

  friend bool operator==(const NetworkGenome&, const NetworkGenome&) = default;
};

// An all-static node with every table zeroed and every list pointing at
// `default_source`.
NodeGenome blank_node(int arity, NodeId default_source);

// Every violation found: ids against the topology, table shapes, gate-set
// membership, flag/mode consistency.
std::vector<Violation> validate_genome(const NetworkGenome& genome);

// Throws ValidationError listing all violations.
void require_valid(const NetworkGenome& genome);

}  // namespace rbn
