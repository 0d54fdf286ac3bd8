#include "rbn/evolution.hpp"

#include <cstdio>
#include <ostream>
#include <string>

namespace rbn {

namespace {

NodeId pick_source(const Topology& topo, NodeId node, Rng& rng) {
  const auto list = topo.legal_sources(node);
  return list[rng.below(list.size())];
}

// Uniform legal source other than `current`; `current` when there is none.
NodeId pick_other_source(const Topology& topo, NodeId node, NodeId current, Rng& rng) {
  const auto list = topo.legal_sources(node);
  if (list.size() < 2) return current;
  NodeId pick = current;
  while (pick == current) pick = list[rng.below(list.size())];
  return pick;
}

TruthTable random_function(const GenomeParams& p, Rng& rng) {
  if (p.function_set == FunctionSet::Gates) return gate_table(kGates[rng.below(4)], p.arity);
  const std::size_t size = std::size_t{1} << p.arity;
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < size; ++i)
    if (rng.coin()) bits |= std::uint64_t{1} << i;
  return TruthTable(p.arity, bits);
}

constexpr MutationKind kStaticKinds[] = {MutationKind::Function, MutationKind::Connection};
constexpr MutationKind kStructuralKinds[] = {MutationKind::Function, MutationKind::Connection,
                                             MutationKind::ToggleStructural, MutationKind::RewireEntry,
                                             MutationKind::StructuralControl};
constexpr MutationKind kFunctionalKinds[] = {MutationKind::Function, MutationKind::Connection,
                                             MutationKind::ToggleFunctional, MutationKind::RefuncEntry,
                                             MutationKind::FunctionalControl};
constexpr MutationKind kBothKinds[] = {MutationKind::Function,          MutationKind::Connection,
                                       MutationKind::ToggleStructural,  MutationKind::ToggleFunctional,
                                       MutationKind::RewireEntry,       MutationKind::RefuncEntry,
                                       MutationKind::StructuralControl, MutationKind::FunctionalControl};

std::vector<NodeId> flagged(const NetworkGenome& g, bool structural) {
  std::vector<NodeId> out;
  for (NodeId id = 1; id <= g.node_count(); ++id)
    if (structural ? g.node(id).structural : g.node(id).functional) out.push_back(id);
  return out;
}

}  // namespace

NetworkGenome random_genome(const GenomeParams& p, Rng& rng) {
  if (p.topology.node_count() != p.node_count)
    throw ContractError("topology size does not match node count");
  NetworkGenome g;
  g.arity = p.arity;
  g.topology = p.topology;
  g.function_set = p.function_set;
  g.mode = p.mode;
  g.nodes.reserve(static_cast<std::size_t>(p.node_count));
  for (NodeId id = 1; id <= p.node_count; ++id) {
    NodeGenome n = blank_node(p.arity, id);
    n.function = random_function(p, rng);
    for (auto& s : n.inputs) s = pick_source(p.topology, id, rng);
    for (auto& s : n.structural_controls) s = pick_source(p.topology, id, rng);
    for (std::size_t r = 0; r < n.rewire.rows(); ++r)
      for (int j = 0; j < p.arity; ++j) n.rewire.set_shift(r, j, rng.between(-kMaxShift, kMaxShift));
    for (auto& s : n.functional_controls) s = pick_source(p.topology, id, rng);
    for (std::size_t r = 0; r < n.refunc.size(); ++r) n.refunc.set(r, rng.coin());
    g.nodes.push_back(std::move(n));
  }
  return g;
}

std::string_view to_string(MutationKind kind) {
  switch (kind) {
    case MutationKind::Function: return "function";
    case MutationKind::Connection: return "connection";
    case MutationKind::ToggleStructural: return "toggle_structural";
    case MutationKind::ToggleFunctional: return "toggle_functional";
    case MutationKind::RewireEntry: return "rewire_entry";
    case MutationKind::RefuncEntry: return "refunc_entry";
    case MutationKind::StructuralControl: return "structural_control";
    case MutationKind::FunctionalControl: return "functional_control";
  }
  return "?";
}

std::span<const MutationKind> mutation_kinds(DynamismMode mode) {
  switch (mode) {
    case DynamismMode::Static: return kStaticKinds;
    case DynamismMode::Structural: return kStructuralKinds;
    case DynamismMode::Functional: return kFunctionalKinds;
    case DynamismMode::Both: return kBothKinds;
  }
  return {};
}

NetworkGenome mutate(const NetworkGenome& parent, Rng& rng, MutationReport* report) {
  NetworkGenome g = parent;
  const auto kinds = mutation_kinds(g.mode);
  MutationReport rep;
  rep.kind = kinds[rng.below(kinds.size())];
  const auto nodes = static_cast<std::uint64_t>(g.node_count());
  const auto slot = [&] { return rng.below(static_cast<std::uint64_t>(g.arity)); };

  switch (rep.kind) {
    case MutationKind::Function: {
      rep.node = static_cast<NodeId>(rng.below(nodes)) + 1;
      TruthTable& f = g.node(rep.node).function;
      if (g.function_set == FunctionSet::Gates) {
        const auto current = as_gate(f);
        Gate next = kGates[rng.below(4)];
        while (current && next == *current) next = kGates[rng.below(4)];
        f = gate_table(next, g.arity);
      } else {
        f.flip(rng.below(f.size()));
      }
      rep.applied = true;
      break;
    }
    case MutationKind::Connection: {
      rep.node = static_cast<NodeId>(rng.below(nodes)) + 1;
      NodeId& s = g.node(rep.node).inputs[slot()];
      const NodeId before = s;
      s = pick_other_source(g.topology, rep.node, s, rng);
      rep.applied = s != before;
      break;
    }
    case MutationKind::ToggleStructural:
      rep.node = static_cast<NodeId>(rng.below(nodes)) + 1;
      g.node(rep.node).structural = !g.node(rep.node).structural;
      rep.applied = true;
      break;
    case MutationKind::ToggleFunctional:
      rep.node = static_cast<NodeId>(rng.below(nodes)) + 1;
      g.node(rep.node).functional = !g.node(rep.node).functional;
      rep.applied = true;
      break;
    case MutationKind::RewireEntry:
    case MutationKind::StructuralControl: {
      const auto eligible = flagged(g, true);
      if (eligible.empty()) break;
      rep.node = eligible[rng.below(eligible.size())];
      NodeGenome& n = g.node(rep.node);
      if (rep.kind == MutationKind::RewireEntry) {
        const auto row = rng.below(n.rewire.rows());
        const auto j = static_cast<int>(slot());
        const int before = n.rewire.shift(row, j);
        int value = before;
        while (value == before) value = rng.between(-kMaxShift, kMaxShift);
        n.rewire.set_shift(row, j, value);
        rep.applied = true;
      } else {
        NodeId& s = n.structural_controls[slot()];
        const NodeId before = s;
        s = pick_other_source(g.topology, rep.node, s, rng);
        rep.applied = s != before;
      }
      break;
    }
    case MutationKind::RefuncEntry:
    case MutationKind::FunctionalControl: {
      const auto eligible = flagged(g, false);
      if (eligible.empty()) break;
      rep.node = eligible[rng.below(eligible.size())];
      NodeGenome& n = g.node(rep.node);
      if (rep.kind == MutationKind::RefuncEntry) {
        n.refunc.flip(rng.below(n.refunc.size()));
        rep.applied = true;
      } else {
        NodeId& s = n.functional_controls[slot()];
        const NodeId before = s;
        s = pick_other_source(g.topology, rep.node, s, rng);
        rep.applied = s != before;
      }
      break;
    }
  }
  if (report) *report = rep;
  return g;
}

std::string format_fitness(double fitness) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", fitness);
  return buf;
}

Decision prefer(const EvalRecord& candidate, const EvalRecord& incumbent, Rng& rng) {
  if (candidate.fitness > incumbent.fitness) return {Winner::Candidate, false};
  if (candidate.fitness < incumbent.fitness) return {Winner::Incumbent, false};
  if (candidate.dynamic_count < incumbent.dynamic_count) return {Winner::Candidate, false};
  if (candidate.dynamic_count > incumbent.dynamic_count) return {Winner::Incumbent, false};
  return {rng.coin() ? Winner::Candidate : Winner::Incumbent, true};
}

void ClimbHistory::write_csv(std::ostream& out) const {
  out << "generation,fitness,dynamic_count,accepted\n";
  for (const auto& r : records)
    out << r.generation << ',' << format_fitness(r.fitness) << ',' << r.dynamic_count << ','
        << (r.accepted ? 1 : 0) << '\n';
}

namespace {

double checked_eval(const Evaluator& evaluate, const NetworkGenome& g, std::size_t generation) {
  try {
    return evaluate(g);
  } catch (const std::exception& e) {
    throw Error("evaluation failed at generation " + std::to_string(generation) + ": " + e.what());
  }
}

}  // namespace

ClimbHistory hill_climb(const Evaluator& evaluate, const GenomeParams& params, std::size_t generations,
                        Rng& rng, std::optional<double> stop_at) {
  ClimbHistory h;
  h.best = random_genome(params, rng);
  h.best_eval = {checked_eval(evaluate, h.best, 0), h.best.dynamic_count()};
  h.records.reserve(generations + 1);
  h.records.push_back({0, h.best_eval.fitness, h.best_eval.dynamic_count, true, false,
                       h.best_eval.fitness, h.best_eval.dynamic_count});

  for (std::size_t gen = 1; gen <= generations; ++gen) {
    if (stop_at && h.best_eval.fitness >= *stop_at) break;
    NetworkGenome child = mutate(h.best, rng);
    const EvalRecord child_eval{checked_eval(evaluate, child, gen), child.dynamic_count()};
    const Decision d = prefer(child_eval, h.best_eval, rng);
    const bool accepted = d.winner == Winner::Candidate;
    if (accepted) {
      h.best = std::move(child);
      h.best_eval = child_eval;
    }
    h.records.push_back({gen, h.best_eval.fitness, h.best_eval.dynamic_count, accepted, d.coin,
                         child_eval.fitness, child_eval.dynamic_count});
  }
  return h;
}

}  // namespace rbn
