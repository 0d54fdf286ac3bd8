#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rbn/genome.hpp"

namespace rbn {

// Bits that replace the value a node reads through its first connection slot.
// The overridden node's own state is untouched, and control (B') reads always
// see true node states.
class InputOverride {
 public:
  InputOverride() = default;
  explicit InputOverride(int node_count) : values_(static_cast<std::size_t>(node_count) + 1, kNone) {}

  void set(NodeId node, Bit value);
  void clear(NodeId node);
  void clear_all();

  bool empty() const { return count_ == 0; }
  std::optional<Bit> get(NodeId node) const;
  // -1 when the node has no override.
  int raw(NodeId node) const {
    auto i = static_cast<std::size_t>(node);
    return i < values_.size() ? values_[i] : kNone;
  }

 private:
  static constexpr std::int8_t kNone = -1;
  std::vector<std::int8_t> values_;
  int count_ = 0;
};

struct WiringDelta {
  NodeId node;
  int slot;  // 0-based connection slot
  NodeId from;
  NodeId to;
};

struct TableDelta {
  NodeId node;
  TruthTable before;
  TruthTable after;
};

// Handed to the trace hook after each committed cycle.
struct CycleTrace {
  std::uint64_t cycle;            // cycle count after the commit
  std::span<const Bit> states;    // states[i] is node i+1
  std::span<const WiringDelta> wiring;
  std::span<const TableDelta> tables;
};

using TraceHook = std::function<void(const CycleTrace&)>;

struct AttractorStats {
  std::uint64_t transient_length = 0;
  std::uint64_t cycle_length = 0;
  bool truncated = false;
};

// Mutable execution image of a genome: states plus lifetime (non-heritable)
// wiring and function tables. Copies share the immutable compiled genome.
class RuntimeNetwork {
 public:
  // Validates the genome; throws ValidationError naming node and field.
  RuntimeNetwork(const NetworkGenome& genome, std::span<const Bit> start_states);
  explicit RuntimeNetwork(const NetworkGenome& genome);  // all-zero start

  const NetworkGenome& genome() const;
  int node_count() const { return node_count_; }
  int arity() const { return arity_; }
  std::uint64_t cycle_count() const { return cycle_; }

  Bit state(NodeId node) const { return states_[static_cast<std::size_t>(node)]; }
  std::span<const Bit> states() const { return std::span<const Bit>(states_).subspan(1); }
  std::span<const NodeId> live_inputs(NodeId node) const {
    return std::span<const NodeId>(inputs_).subspan(offset(node), static_cast<std::size_t>(arity_));
  }
  TruthTable live_table(NodeId node) const {
    return TruthTable(arity_, tables_[static_cast<std::size_t>(node - 1)]);
  }

  // State the node would take next cycle given time-t values.
  Bit next_state(NodeId node, const InputOverride& ov) const;
  // Connections the node would use next cycle (unchanged if not structural).
  std::vector<NodeId> rewire_targets(NodeId node) const;

  // One synchronous cycle: states, rewiring and re-functioning are all
  // computed from time-t values, then committed together.
  void step(const InputOverride& ov);
  void step() { step(no_override()); }
  void run(const InputOverride& ov, std::size_t cycles);

  // Restores states and the genome's wiring/tables; cycle count returns to 0.
  void reset(std::span<const Bit> start_states);
  void reset();

  void set_trace(TraceHook hook) { hook_ = std::move(hook); }

  // True when any node carries a dynamism flag.
  bool has_dynamism() const;
  // Byte key of everything that determines the future trajectory.
  std::string state_key() const;

  // Compares states, live wiring, live tables and cycle count.
  bool same_state(const RuntimeNetwork& other) const;

 private:
  struct Program;

  static const InputOverride& no_override();
  std::size_t offset(NodeId node) const {
    return static_cast<std::size_t>(node - 1) * static_cast<std::size_t>(arity_);
  }
  std::uint32_t control_row(std::span<const NodeId> controls) const;
  NodeId wrap_shift(NodeId node, NodeId current, int shift) const;
  void step_traced(const InputOverride& ov);

  std::shared_ptr<const Program> program_;
  int node_count_ = 0;
  int arity_ = 0;
  std::vector<Bit> states_;  // 1-based; slot 0 unused
  std::vector<Bit> next_;
  std::vector<NodeId> inputs_;
  std::vector<std::uint64_t> tables_;
  std::uint64_t cycle_ = 0;
  TraceHook hook_;
};

RuntimeNetwork build_runtime(const NetworkGenome& genome, std::span<const Bit> start_states);
Bit node_next_state(const RuntimeNetwork& rt, NodeId node, const InputOverride& ov);
std::vector<NodeId> rewire_step(const RuntimeNetwork& rt, NodeId node);
void run_cycles(RuntimeNetwork& rt, const InputOverride& ov, std::size_t cycles);
void reset_runtime(RuntimeNetwork& rt, std::span<const Bit> start_states);

// Runs a copy of `rt` without overrides until the full network state repeats
// or `horizon` cycles have been taken.
AttractorStats detect_attractor(const RuntimeNetwork& rt, std::size_t horizon);

}  // namespace rbn
