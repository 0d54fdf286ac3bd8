#include "rbn/genome.hpp"

#include <string>

namespace rbn {

std::string_view to_string(FunctionSet set) { return set == FunctionSet::All ? "all" : "gates"; }

std::string_view to_string(DynamismMode mode) {
  switch (mode) {
    case DynamismMode::Static: return "static";
    case DynamismMode::Structural: return "structural";
    case DynamismMode::Functional: return "functional";
    case DynamismMode::Both: return "both";
  }
  return "?";
}

FunctionSet parse_function_set(std::string_view text) {
  if (text == "all") return FunctionSet::All;
  if (text == "gates") return FunctionSet::Gates;
  throw Error("unknown function set '" + std::string(text) + "' (expected all|gates)");
}

DynamismMode parse_dynamism_mode(std::string_view text) {
  if (text == "static") return DynamismMode::Static;
  if (text == "structural") return DynamismMode::Structural;
  if (text == "functional") return DynamismMode::Functional;
  if (text == "both") return DynamismMode::Both;
  throw Error("unknown dynamism mode '" + std::string(text) +
              "' (expected static|structural|functional|both)");
}

int NetworkGenome::dynamic_count() const {
  int n = 0;
  for (const auto& node : nodes) n += node.dynamic_flags();
  return n;
}

NodeGenome blank_node(int arity, NodeId default_source) {
  NodeGenome n;
  n.function = TruthTable(arity, 0);
  n.inputs.assign(static_cast<std::size_t>(arity), default_source);
  n.structural_controls.assign(static_cast<std::size_t>(arity), default_source);
  n.rewire = RewireTable(arity, arity);
  n.functional_controls.assign(static_cast<std::size_t>(arity), default_source);
  n.refunc = RefuncTable(arity, 0);
  return n;
}

namespace {

void check_ids(const NetworkGenome& g, NodeId node, const std::vector<NodeId>& ids,
               const char* field, std::vector<Violation>& out) {
  if (static_cast<int>(ids.size()) != g.arity) {
    out.push_back({node, field,
                   "has " + std::to_string(ids.size()) + " ids, expected " + std::to_string(g.arity)});
    return;
  }
  for (std::size_t j = 0; j < ids.size(); ++j) {
    if (!g.topology.is_legal(node, ids[j]))
      out.push_back({node, std::string(field) + "[" + std::to_string(j) + "]",
                     "source " + std::to_string(ids[j]) + " is not legal under the topology"});
  }
}

}  // namespace

std::vector<Violation> validate_genome(const NetworkGenome& g) {
  std::vector<Violation> out;
  if (g.arity < 1 || g.arity > kMaxArity) {
    out.push_back({0, "arity", "must be in 1..6, got " + std::to_string(g.arity)});
    return out;
  }
  if (g.node_count() != g.topology.node_count())
    out.push_back({0, "nodes",
                   std::to_string(g.node_count()) + " nodes but topology has " +
                       std::to_string(g.topology.node_count())});
  if (g.function_set == FunctionSet::Gates && g.arity < 2)
    out.push_back({0, "function_set", "gate set needs arity >= 2"});

  const int checkable = std::min(g.node_count(), g.topology.node_count());
  for (NodeId id = 1; id <= checkable; ++id) {
    const NodeGenome& n = g.node(id);
    if (n.function.arity() != g.arity)
      out.push_back({id, "function", "table has " + std::to_string(n.function.size()) + " entries, expected " +
                                         std::to_string(1u << g.arity)});
    else if (g.function_set == FunctionSet::Gates && !as_gate(n.function))
      out.push_back({id, "function", "table " + n.function.to_string() + " is not one of AND/NAND/OR/NOR"});

    check_ids(g, id, n.inputs, "inputs", out);
    check_ids(g, id, n.structural_controls, "structural_controls", out);
    check_ids(g, id, n.functional_controls, "functional_controls", out);

    if (n.rewire.control_arity() != g.arity || n.rewire.slots() != g.arity)
      out.push_back({id, "rewire", "table shape does not match arity"});
    if (n.refunc.arity() != g.arity)
      out.push_back({id, "refunc", "table has " + std::to_string(n.refunc.size()) + " entries, expected " +
                                       std::to_string(1u << g.arity)});

    if (n.structural && !allows_structural(g.mode))
      out.push_back({id, "structural", std::string("flag set in ") + std::string(to_string(g.mode)) + " mode"});
    if (n.functional && !allows_functional(g.mode))
      out.push_back({id, "functional", std::string("flag set in ") + std::string(to_string(g.mode)) + " mode"});
  }
  return out;
}

void require_valid(const NetworkGenome& genome) {
  auto violations = validate_genome(genome);
  if (!violations.empty()) throw ValidationError(std::move(violations));
}

}  // namespace rbn
