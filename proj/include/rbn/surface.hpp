#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <functional>
#include <string_view>
#include <vector>

#include "rbn/evolution.hpp"
#include "rbn/runtime.hpp"

namespace rbn {

enum class Direction { North, East, South, West };

std::string_view to_string(Direction d);

// Output-node code: 00 N, 01 E, 10 S, 11 W.
Direction decode_direction(Bit first, Bit second);

struct SurfaceConfig {
  int rows = 12;
  int cols = 12;
  int node_count = 20;
  int arity = 2;
  std::array<NodeId, 5> sensor_nodes{1, 2, 3, 4, 5};  // self, N, E, S, W
  std::array<NodeId, 4> comm_nodes{6, 7, 8, 9};       // from N, E, S, W neighbour
  NodeId comm_source = 18;                            // node each neighbour broadcasts
  std::array<NodeId, 2> output_nodes{19, 20};
  int cycles_per_step = 10;
  int steps_per_scenario = 10;
  int reference_cell = 76;
  int cell_indexing = 0;       // first cell number: 0 or 1
  bool signed_fitness = true;  // false: unsigned distance from the reference cell

  int cell_count() const { return rows * cols; }
  int reference_row() const { return (reference_cell - cell_indexing) / cols; }
  int reference_col() const { return (reference_cell - cell_indexing) % cols; }

  // Throws Error on overlapping node roles or ids outside the controller.
  void validate() const;
  GenomeParams controller_params(DynamismMode mode) const;
};

struct ObjectSpec {
  int length = 3;
  Direction target = Direction::North;

  static ObjectSpec north_3x1() { return {3, Direction::North}; }
  static ObjectSpec south_5x1() { return {5, Direction::South}; }
};

// A horizontal segment of `length` cells starting at (row, first_col).
struct ObjectPlacement {
  int row = 0;
  int first_col = 0;
  int length = 0;

  int middle_col() const { return first_col + length / 2; }
  bool covers(int r, int c) const { return r == row && c >= first_col && c < first_col + length; }
  // Row-major 0-based cell indices, west to east.
  std::vector<int> cells(int cols) const;

  friend bool operator==(const ObjectPlacement&, const ObjectPlacement&) = default;
};

// The object centred on the reference cell.
ObjectPlacement initial_placement(const ObjectSpec& obj, const SurfaceConfig& cfg);

// Moves one cell in `d` unless that would leave the grid.
bool try_move(ObjectPlacement& p, Direction d, const SurfaceConfig& cfg);

class SurfaceState {
 public:
  std::vector<RuntimeNetwork> controllers;  // index = 0-based cell
  ObjectPlacement object;
  int step = 0;

  // Scratch for the lockstep cycle.
  std::vector<InputOverride> inputs;
};

// The 9 external bits a cell sees this cycle: object presence at self/N/E/S/W
// and the committed comm-source state of the N/E/S/W neighbours. Off-grid
// reads are 0.
InputOverride cell_inputs(const SurfaceState& s, const SurfaceConfig& cfg, int cell);

SurfaceState init_scenario(const NetworkGenome& genome, const ObjectSpec& obj, const SurfaceConfig& cfg);

// One lockstep cycle of every controller.
void surface_global_cycle(SurfaceState& s, const SurfaceConfig& cfg);

struct StepRecord {
  int step = 0;
  std::vector<int> cells;  // occupancy before the move (config numbering)
  std::vector<Direction> decisions;
  bool moved = false;
  ObjectPlacement after;
};

// cycles_per_step global cycles, then a move if every cell under the object
// decodes the same direction and the move stays on the grid.
StepRecord movement_step(SurfaceState& s, const SurfaceConfig& cfg);

// The same lockstep dynamics as SurfaceState, stored bit-sliced: one bit per
// cell for every node. Nodes without dynamism are updated for all cells with
// word operations; dynamic nodes keep per-cell wiring and tables. Used by the
// scenario runner and the evaluator; SurfaceState is the per-controller
// reference it is checked against.
class SlicedSurface {
 public:
  static constexpr int kMaxCells = 256;

  SlicedSurface(const NetworkGenome& genome, const ObjectSpec& obj, const SurfaceConfig& cfg);

  const ObjectPlacement& object() const { return object_; }
  int step_index() const { return step_; }
  Bit state(int cell, NodeId node) const;
  std::span<const NodeId> live_inputs(int cell, NodeId node) const;
  TruthTable live_table(int cell, NodeId node) const;

  void global_cycle();
  StepRecord movement_step();

 private:
  static constexpr int kWords = kMaxCells / 64;
  struct Lanes {
    std::array<std::uint64_t, kWords> w{};
  };

  Bit bit(const Lanes& l, int cell) const {
    return static_cast<Bit>((l.w[static_cast<std::size_t>(cell >> 6)] >> (cell & 63)) & 1u);
  }
  void refresh_sensors();

  SurfaceConfig cfg_;
  NetworkGenome genome_;
  int cells_;
  int words_;
  int arity_;
  ObjectPlacement object_;
  int step_ = 0;

  std::vector<Lanes> states_;  // index = node id (slot 0 unused)
  std::vector<Lanes> next_;
  std::vector<Lanes> overrides_;    // index = node id; meaningful where forced_[id]
  std::vector<char> forced_;
  std::vector<char> dynamic_;
  std::vector<NodeId> dynamic_nodes_;
  // Per-cell copies for dynamic nodes: index (cell * R + node - 1).
  std::vector<NodeId> cell_inputs_;
  std::vector<std::uint64_t> cell_tables_;
  Lanes grid_mask_;
  Lanes not_first_col_;
  Lanes not_last_col_;
};

struct ScenarioResult {
  int displacement = 0;  // toward the target direction, may be negative
  int distance = 0;      // Manhattan distance of the middle cell from the reference cell
  ObjectPlacement final_placement;
};

using StepSink = std::function<void(const StepRecord&)>;

ScenarioResult run_scenario(const NetworkGenome& genome, const ObjectSpec& obj, const SurfaceConfig& cfg,
                            const StepSink& sink = {});

// Score of one scenario under the configured fitness sign.
int scenario_fitness(const ScenarioResult& r, const SurfaceConfig& cfg);

// Sum over the north-bound 3x1 and south-bound 5x1 scenarios.
double evaluate_surface(const NetworkGenome& genome, const SurfaceConfig& cfg);

// Largest signed displacement any controller could achieve in a scenario:
// the distance to the target edge, capped by the step budget.
int scenario_bound(const ObjectSpec& obj, const SurfaceConfig& cfg);

}  // namespace rbn
