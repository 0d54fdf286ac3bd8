#include "rbn/runtime.hpp"

#include <unordered_map>
#include <utility>

namespace rbn {

void InputOverride::set(NodeId node, Bit value) {
  if (node < 1) throw ContractError("override node id must be >= 1");
  auto i = static_cast<std::size_t>(node);
  if (i >= values_.size()) values_.resize(i + 1, kNone);
  if (values_[i] == kNone) ++count_;
  values_[i] = static_cast<std::int8_t>(value & 1u);
}

void InputOverride::clear(NodeId node) {
  auto i = static_cast<std::size_t>(node);
  if (i < values_.size() && values_[i] != kNone) {
    values_[i] = kNone;
    --count_;
  }
}

void InputOverride::clear_all() {
  std::fill(values_.begin(), values_.end(), kNone);
  count_ = 0;
}

std::optional<Bit> InputOverride::get(NodeId node) const {
  const int v = raw(node);
  if (v < 0) return std::nullopt;
  return static_cast<Bit>(v);
}

struct RuntimeNetwork::Program {
  NetworkGenome genome;
  std::vector<NodeId> inputs;
  std::vector<std::uint64_t> tables;
  std::vector<NodeId> structural_nodes;
  std::vector<NodeId> functional_nodes;
};

RuntimeNetwork::RuntimeNetwork(const NetworkGenome& genome, std::span<const Bit> start_states) {
  require_valid(genome);
  auto program = std::make_shared<Program>();
  program->genome = genome;
  for (NodeId id = 1; id <= genome.node_count(); ++id) {
    const NodeGenome& n = genome.node(id);
    program->inputs.insert(program->inputs.end(), n.inputs.begin(), n.inputs.end());
    program->tables.push_back(n.function.bits());
    if (n.structural) program->structural_nodes.push_back(id);
    if (n.functional) program->functional_nodes.push_back(id);
  }
  program_ = std::move(program);
  node_count_ = genome.node_count();
  arity_ = genome.arity;
  states_.assign(static_cast<std::size_t>(node_count_) + 1, 0);
  next_ = states_;
  reset(start_states);
}

RuntimeNetwork::RuntimeNetwork(const NetworkGenome& genome)
    : RuntimeNetwork(genome, std::vector<Bit>(genome.nodes.size(), 0)) {}

const NetworkGenome& RuntimeNetwork::genome() const { return program_->genome; }

const InputOverride& RuntimeNetwork::no_override() {
  static const InputOverride none;
  return none;
}

bool RuntimeNetwork::has_dynamism() const {
  return !program_->structural_nodes.empty() || !program_->functional_nodes.empty();
}

void RuntimeNetwork::reset(std::span<const Bit> start_states) {
  if (static_cast<int>(start_states.size()) != node_count_)
    throw ContractError("start configuration has " + std::to_string(start_states.size()) +
                        " states, network has " + std::to_string(node_count_));
  for (std::size_t i = 0; i < start_states.size(); ++i) states_[i + 1] = start_states[i] & 1u;
  inputs_ = program_->inputs;
  tables_ = program_->tables;
  cycle_ = 0;
}

void RuntimeNetwork::reset() {
  std::fill(states_.begin(), states_.end(), Bit{0});
  inputs_ = program_->inputs;
  tables_ = program_->tables;
  cycle_ = 0;
}

std::uint32_t RuntimeNetwork::control_row(std::span<const NodeId> controls) const {
  std::uint32_t row = 0;
  for (NodeId c : controls) row = (row << 1) | states_[static_cast<std::size_t>(c)];
  return row;
}

NodeId RuntimeNetwork::wrap_shift(NodeId node, NodeId current, int shift) const {
  const Topology& topo = program_->genome.topology;
  if (topo.kind() == TopologyKind::Full) {
    const int r = node_count_;
    return ((current - 1 + shift) % r + r) % r + 1;
  }
  return topo.shift_source(node, current, shift);
}

Bit RuntimeNetwork::next_state(NodeId node, const InputOverride& ov) const {
  const NodeId* in = inputs_.data() + offset(node);
  const int forced = ov.raw(node);
  std::uint32_t index = forced >= 0 ? static_cast<std::uint32_t>(forced) : states_[static_cast<std::size_t>(in[0])];
  for (int j = 1; j < arity_; ++j) index = (index << 1) | states_[static_cast<std::size_t>(in[j])];
  return static_cast<Bit>((tables_[static_cast<std::size_t>(node - 1)] >> index) & 1u);
}

std::vector<NodeId> RuntimeNetwork::rewire_targets(NodeId node) const {
  const auto live = live_inputs(node);
  std::vector<NodeId> out(live.begin(), live.end());
  const NodeGenome& g = program_->genome.node(node);
  if (!g.structural) return out;
  const auto shifts = g.rewire.row(control_row(g.structural_controls));
  for (int j = 0; j < arity_; ++j) out[static_cast<std::size_t>(j)] = wrap_shift(node, out[static_cast<std::size_t>(j)], shifts[static_cast<std::size_t>(j)]);
  return out;
}

void RuntimeNetwork::step(const InputOverride& ov) {
  if (hook_) {
    step_traced(ov);
    return;
  }
  for (NodeId n = 1; n <= node_count_; ++n) next_[static_cast<std::size_t>(n)] = next_state(n, ov);

  // Dynamic updates touch only the node's own wiring/table and read states_,
  // which still holds time-t values.
  for (NodeId n : program_->structural_nodes) {
    const NodeGenome& g = program_->genome.node(n);
    const auto shifts = g.rewire.row(control_row(g.structural_controls));
    NodeId* in = inputs_.data() + offset(n);
    for (int j = 0; j < arity_; ++j) in[j] = wrap_shift(n, in[j], shifts[static_cast<std::size_t>(j)]);
  }
  for (NodeId n : program_->functional_nodes) {
    const NodeGenome& g = program_->genome.node(n);
    auto& table = tables_[static_cast<std::size_t>(n - 1)];
    table = refunc_step(TruthTable(arity_, table), g.refunc[control_row(g.functional_controls)]).bits();
  }
  std::swap(states_, next_);
  ++cycle_;
}

void RuntimeNetwork::step_traced(const InputOverride& ov) {
  const auto inputs_before = inputs_;
  const auto tables_before = tables_;
  TraceHook hook = std::move(hook_);
  hook_ = nullptr;
  step(ov);
  hook_ = std::move(hook);

  std::vector<WiringDelta> wiring;
  for (std::size_t i = 0; i < inputs_.size(); ++i) {
    if (inputs_[i] != inputs_before[i]) {
      const auto b = static_cast<std::size_t>(arity_);
      wiring.push_back({static_cast<NodeId>(i / b) + 1, static_cast<int>(i % b), inputs_before[i], inputs_[i]});
    }
  }
  std::vector<TableDelta> tables;
  for (std::size_t i = 0; i < tables_.size(); ++i) {
    if (tables_[i] != tables_before[i])
      tables.push_back({static_cast<NodeId>(i) + 1, TruthTable(arity_, tables_before[i]), TruthTable(arity_, tables_[i])});
  }
  hook_(CycleTrace{cycle_, states(), wiring, tables});
}

void RuntimeNetwork::run(const InputOverride& ov, std::size_t cycles) {
  for (std::size_t i = 0; i < cycles; ++i) step(ov);
}

std::string RuntimeNetwork::state_key() const {
  std::string key((static_cast<std::size_t>(node_count_) + 7) / 8, '\0');
  for (int i = 0; i < node_count_; ++i)
    if (states_[static_cast<std::size_t>(i) + 1]) key[static_cast<std::size_t>(i / 8)] |= static_cast<char>(1 << (i % 8));
  // Wiring and tables only move when some node is dynamic.
  if (has_dynamism()) {
    key.append(reinterpret_cast<const char*>(inputs_.data()), inputs_.size() * sizeof(NodeId));
    key.append(reinterpret_cast<const char*>(tables_.data()), tables_.size() * sizeof(std::uint64_t));
  }
  return key;
}

bool RuntimeNetwork::same_state(const RuntimeNetwork& other) const {
  return states_ == other.states_ && inputs_ == other.inputs_ && tables_ == other.tables_ &&
         cycle_ == other.cycle_;
}

RuntimeNetwork build_runtime(const NetworkGenome& genome, std::span<const Bit> start_states) {
  return RuntimeNetwork(genome, start_states);
}

Bit node_next_state(const RuntimeNetwork& rt, NodeId node, const InputOverride& ov) {
  if (node < 1 || node > rt.node_count()) throw ContractError("node id out of range");
  return rt.next_state(node, ov);
}

std::vector<NodeId> rewire_step(const RuntimeNetwork& rt, NodeId node) {
  if (node < 1 || node > rt.node_count()) throw ContractError("node id out of range");
  return rt.rewire_targets(node);
}

void run_cycles(RuntimeNetwork& rt, const InputOverride& ov, std::size_t cycles) { rt.run(ov, cycles); }

void reset_runtime(RuntimeNetwork& rt, std::span<const Bit> start_states) { rt.reset(start_states); }

AttractorStats detect_attractor(const RuntimeNetwork& rt, std::size_t horizon) {
  if (horizon < 1) throw ContractError("attractor horizon must be >= 1");
  RuntimeNetwork probe = rt;
  probe.set_trace(nullptr);
  std::unordered_map<std::string, std::uint64_t> seen;
  seen.reserve(horizon + 1);
  seen.emplace(probe.state_key(), 0);
  for (std::uint64_t t = 1; t <= horizon; ++t) {
    probe.step();
    auto [it, inserted] = seen.emplace(probe.state_key(), t);
    if (!inserted) return AttractorStats{it->second, t - it->second, false};
  }
  return AttractorStats{0, 0, true};
}

}  // namespace rbn
