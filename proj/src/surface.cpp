#include "rbn/surface.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>

namespace rbn {

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::North: return "N";
    case Direction::East: return "E";
    case Direction::South: return "S";
    case Direction::West: return "W";
  }
  return "?";
}

Direction decode_direction(Bit first, Bit second) {
  return static_cast<Direction>(((first & 1u) << 1) | (second & 1u));
}

namespace {

constexpr int kRowStep[] = {-1, 0, 1, 0};  // N E S W
constexpr int kColStep[] = {0, 1, 0, -1};

}  // namespace

void SurfaceConfig::validate() const {
  if (rows < 1 || cols < 1) throw Error("surface needs at least one cell");
  if (cell_indexing != 0 && cell_indexing != 1) throw Error("cell_indexing must be 0 or 1");
  if (reference_cell < cell_indexing || reference_cell >= cell_count() + cell_indexing)
    throw Error("reference cell " + std::to_string(reference_cell) + " is off the surface");
  std::set<NodeId> seen;
  auto claim = [&](NodeId id, const char* role) {
    if (id < 1 || id > node_count)
      throw Error(std::string(role) + " node " + std::to_string(id) + " outside the controller");
    if (!seen.insert(id).second) throw Error(std::string(role) + " node " + std::to_string(id) + " has two roles");
  };
  for (NodeId id : sensor_nodes) claim(id, "sensor");
  for (NodeId id : comm_nodes) claim(id, "comm input");
  claim(comm_source, "comm source");
  for (NodeId id : output_nodes) claim(id, "output");
}

GenomeParams SurfaceConfig::controller_params(DynamismMode mode) const {
  return {node_count, arity, Topology::full(node_count), FunctionSet::All, mode};
}

std::vector<int> ObjectPlacement::cells(int cols) const {
  std::vector<int> out;
  for (int c = first_col; c < first_col + length; ++c) out.push_back(row * cols + c);
  return out;
}

ObjectPlacement initial_placement(const ObjectSpec& obj, const SurfaceConfig& cfg) {
  ObjectPlacement p{cfg.reference_row(), cfg.reference_col() - obj.length / 2, obj.length};
  if (p.first_col < 0 || p.first_col + p.length > cfg.cols)
    throw Error("object of length " + std::to_string(obj.length) + " does not fit around the reference cell");
  return p;
}

bool try_move(ObjectPlacement& p, Direction d, const SurfaceConfig& cfg) {
  const auto i = static_cast<std::size_t>(d);
  const int row = p.row + kRowStep[i];
  const int first = p.first_col + kColStep[i];
  if (row < 0 || row >= cfg.rows || first < 0 || first + p.length > cfg.cols) return false;
  p.row = row;
  p.first_col = first;
  return true;
}

namespace {

void fill_cell_inputs(const SurfaceState& s, const SurfaceConfig& cfg, int cell, InputOverride& ov) {
  const int r = cell / cfg.cols;
  const int c = cell % cfg.cols;
  ov.set(cfg.sensor_nodes[0], s.object.covers(r, c) ? 1 : 0);
  for (std::size_t d = 0; d < 4; ++d) {
    const int rr = r + kRowStep[d];
    const int cc = c + kColStep[d];
    const bool on_grid = rr >= 0 && rr < cfg.rows && cc >= 0 && cc < cfg.cols;
    ov.set(cfg.sensor_nodes[d + 1], on_grid && s.object.covers(rr, cc) ? 1 : 0);
    const Bit comm = on_grid ? s.controllers[static_cast<std::size_t>(rr * cfg.cols + cc)].state(cfg.comm_source) : 0;
    ov.set(cfg.comm_nodes[d], comm);
  }
}

}  // namespace

InputOverride cell_inputs(const SurfaceState& s, const SurfaceConfig& cfg, int cell) {
  InputOverride ov(cfg.node_count);
  fill_cell_inputs(s, cfg, cell, ov);
  return ov;
}

namespace {

void check_controller(const NetworkGenome& g, const SurfaceConfig& cfg) {
  cfg.validate();
  if (g.node_count() != cfg.node_count)
    throw Error("controller genome has " + std::to_string(g.node_count()) + " nodes, surface expects " +
                std::to_string(cfg.node_count));
  if (g.arity != cfg.arity)
    throw Error("controller genome has arity " + std::to_string(g.arity) + ", surface expects " +
                std::to_string(cfg.arity));
}

}  // namespace

SurfaceState init_scenario(const NetworkGenome& genome, const ObjectSpec& obj, const SurfaceConfig& cfg) {
  check_controller(genome, cfg);
  SurfaceState s;
  s.controllers.assign(static_cast<std::size_t>(cfg.cell_count()), RuntimeNetwork(genome));
  s.object = initial_placement(obj, cfg);
  s.inputs.assign(s.controllers.size(), InputOverride(cfg.node_count));
  return s;
}

void surface_global_cycle(SurfaceState& s, const SurfaceConfig& cfg) {
  // Gather every cell's inputs from committed states before any cell steps.
  for (int cell = 0; cell < cfg.cell_count(); ++cell)
    fill_cell_inputs(s, cfg, cell, s.inputs[static_cast<std::size_t>(cell)]);
  for (std::size_t cell = 0; cell < s.controllers.size(); ++cell) s.controllers[cell].step(s.inputs[cell]);
}

StepRecord movement_step(SurfaceState& s, const SurfaceConfig& cfg) {
  if (s.inputs.size() != s.controllers.size()) s.inputs.assign(s.controllers.size(), InputOverride(cfg.node_count));
  for (int i = 0; i < cfg.cycles_per_step; ++i) surface_global_cycle(s, cfg);

  StepRecord rec;
  rec.step = s.step;
  for (int cell : s.object.cells(cfg.cols)) {
    rec.cells.push_back(cell + cfg.cell_indexing);
    const auto& rt = s.controllers[static_cast<std::size_t>(cell)];
    rec.decisions.push_back(decode_direction(rt.state(cfg.output_nodes[0]), rt.state(cfg.output_nodes[1])));
  }
  const bool unanimous = std::all_of(rec.decisions.begin(), rec.decisions.end(),
                                     [&](Direction d) { return d == rec.decisions.front(); });
  if (unanimous && !rec.decisions.empty()) rec.moved = try_move(s.object, rec.decisions.front(), cfg);
  rec.after = s.object;
  ++s.step;
  return rec;
}

// ---------------------------------------------------------------------------
// Bit-sliced engine

namespace {

using Word = std::uint64_t;

}  // namespace

SlicedSurface::SlicedSurface(const NetworkGenome& genome, const ObjectSpec& obj, const SurfaceConfig& cfg)
    : cfg_(cfg), genome_(genome) {
  check_controller(genome, cfg);
  require_valid(genome);
  cells_ = cfg.cell_count();
  if (cells_ > kMaxCells) throw ContractError("sliced surface supports at most 256 cells");
  words_ = (cells_ + 63) / 64;
  arity_ = genome.arity;
  object_ = initial_placement(obj, cfg);

  const auto r = static_cast<std::size_t>(genome.node_count());
  states_.assign(r + 1, Lanes{});
  next_ = states_;
  overrides_ = states_;
  forced_.assign(r + 1, 0);
  dynamic_.assign(r + 1, 0);
  for (NodeId id : cfg.sensor_nodes) forced_[static_cast<std::size_t>(id)] = 1;
  for (NodeId id : cfg.comm_nodes) forced_[static_cast<std::size_t>(id)] = 1;
  for (NodeId id = 1; id <= genome.node_count(); ++id) {
    if (genome.node(id).dynamic_flags() > 0) {
      dynamic_[static_cast<std::size_t>(id)] = 1;
      dynamic_nodes_.push_back(id);
    }
  }
  for (int c = 0; c < cells_; ++c) {
    for (NodeId id = 1; id <= genome.node_count(); ++id) {
      const NodeGenome& n = genome.node(id);
      cell_inputs_.insert(cell_inputs_.end(), n.inputs.begin(), n.inputs.end());
      cell_tables_.push_back(n.function.bits());
    }
  }
  for (int c = 0; c < cells_; ++c) {
    const auto w = static_cast<std::size_t>(c >> 6);
    const Word b = Word{1} << (c & 63);
    grid_mask_.w[w] |= b;
    if (c % cfg.cols != 0) not_first_col_.w[w] |= b;
    if (c % cfg.cols != cfg.cols - 1) not_last_col_.w[w] |= b;
  }
  refresh_sensors();
}

namespace {

template <std::size_t N>
std::array<Word, N> shift_up(const std::array<Word, N>& in, int k, int words) {
  // out bit i = in bit (i - k)
  std::array<Word, N> out{};
  const int ws = k / 64;
  const int bs = k % 64;
  for (int w = words - 1; w >= ws; --w) {
    Word v = in[static_cast<std::size_t>(w - ws)] << bs;
    if (bs && w - ws - 1 >= 0) v |= in[static_cast<std::size_t>(w - ws - 1)] >> (64 - bs);
    out[static_cast<std::size_t>(w)] = v;
  }
  return out;
}

template <std::size_t N>
std::array<Word, N> shift_down(const std::array<Word, N>& in, int k, int words) {
  // out bit i = in bit (i + k)
  std::array<Word, N> out{};
  const int ws = k / 64;
  const int bs = k % 64;
  for (int w = 0; w + ws < words; ++w) {
    Word v = in[static_cast<std::size_t>(w + ws)] >> bs;
    if (bs && w + ws + 1 < words) v |= in[static_cast<std::size_t>(w + ws + 1)] << (64 - bs);
    out[static_cast<std::size_t>(w)] = v;
  }
  return out;
}

template <std::size_t N>
std::array<Word, N> masked(std::array<Word, N> a, const std::array<Word, N>& m) {
  for (std::size_t i = 0; i < N; ++i) a[i] &= m[i];
  return a;
}

}  // namespace

void SlicedSurface::refresh_sensors() {
  Lanes occ;
  for (int c : object_.cells(cfg_.cols)) occ.w[static_cast<std::size_t>(c >> 6)] |= Word{1} << (c & 63);
  const auto at = [&](NodeId id) -> Lanes& { return overrides_[static_cast<std::size_t>(id)]; };
  at(cfg_.sensor_nodes[0]) = occ;
  at(cfg_.sensor_nodes[1]).w = shift_up(occ.w, cfg_.cols, words_);
  at(cfg_.sensor_nodes[2]).w = masked(shift_down(occ.w, 1, words_), not_last_col_.w);
  at(cfg_.sensor_nodes[3]).w = shift_down(occ.w, cfg_.cols, words_);
  at(cfg_.sensor_nodes[4]).w = masked(shift_up(occ.w, 1, words_), not_first_col_.w);
}

Bit SlicedSurface::state(int cell, NodeId node) const { return bit(states_[static_cast<std::size_t>(node)], cell); }

std::span<const NodeId> SlicedSurface::live_inputs(int cell, NodeId node) const {
  const auto base = (static_cast<std::size_t>(cell) * static_cast<std::size_t>(genome_.node_count()) +
                     static_cast<std::size_t>(node - 1)) *
                    static_cast<std::size_t>(arity_);
  return {cell_inputs_.data() + base, static_cast<std::size_t>(arity_)};
}

TruthTable SlicedSurface::live_table(int cell, NodeId node) const {
  return TruthTable(arity_, cell_tables_[static_cast<std::size_t>(cell) * static_cast<std::size_t>(genome_.node_count()) +
                                         static_cast<std::size_t>(node - 1)]);
}

void SlicedSurface::global_cycle() {
  const Lanes& comm = states_[static_cast<std::size_t>(cfg_.comm_source)];
  const auto at = [&](NodeId id) -> Lanes& { return overrides_[static_cast<std::size_t>(id)]; };
  at(cfg_.comm_nodes[0]).w = shift_up(comm.w, cfg_.cols, words_);
  at(cfg_.comm_nodes[1]).w = masked(shift_down(comm.w, 1, words_), not_last_col_.w);
  at(cfg_.comm_nodes[2]).w = shift_down(comm.w, cfg_.cols, words_);
  at(cfg_.comm_nodes[3]).w = masked(shift_up(comm.w, 1, words_), not_first_col_.w);

  const int r = genome_.node_count();
  const auto ur = static_cast<std::size_t>(r);
  const auto b = static_cast<std::size_t>(arity_);
  const std::size_t entries = std::size_t{1} << arity_;

  for (NodeId id = 1; id <= r; ++id) {
    const auto i = static_cast<std::size_t>(id);
    Lanes& out = next_[i];
    if (!dynamic_[i]) {
      const NodeGenome& n = genome_.node(id);
      const Word table = n.function.bits();
      const Lanes* in[kMaxArity];
      for (std::size_t j = 0; j < b; ++j) in[j] = &states_[static_cast<std::size_t>(n.inputs[j])];
      if (forced_[i]) in[0] = &overrides_[i];
      for (int w = 0; w < words_; ++w) {
        const auto uw = static_cast<std::size_t>(w);
        Word acc = 0;
        for (std::size_t idx = 0; idx < entries; ++idx) {
          if (!((table >> idx) & 1u)) continue;
          Word term = ~Word{0};
          for (std::size_t j = 0; j < b; ++j) {
            const Word v = in[j]->w[uw];
            term &= ((idx >> (b - 1 - j)) & 1u) ? v : ~v;
          }
          acc |= term;
        }
        out.w[uw] = acc & grid_mask_.w[uw];
      }
      continue;
    }
    out = Lanes{};
    for (int c = 0; c < cells_; ++c) {
      const NodeId* src = cell_inputs_.data() + (static_cast<std::size_t>(c) * ur + i - 1) * b;
      std::uint32_t idx = forced_[i] ? bit(overrides_[i], c) : bit(states_[static_cast<std::size_t>(src[0])], c);
      for (std::size_t j = 1; j < b; ++j) idx = (idx << 1) | bit(states_[static_cast<std::size_t>(src[j])], c);
      const Word table = cell_tables_[static_cast<std::size_t>(c) * ur + i - 1];
      out.w[static_cast<std::size_t>(c >> 6)] |= ((table >> idx) & 1u) << (c & 63);
    }
  }

  // Lifetime rewiring and re-functioning, from time-t states.
  const bool full = genome_.topology.kind() == TopologyKind::Full;
  for (NodeId id : dynamic_nodes_) {
    const NodeGenome& n = genome_.node(id);
    const auto i = static_cast<std::size_t>(id);
    for (int c = 0; c < cells_; ++c) {
      if (n.structural) {
        std::uint32_t row = 0;
        for (NodeId ctl : n.structural_controls) row = (row << 1) | bit(states_[static_cast<std::size_t>(ctl)], c);
        const auto shifts = n.rewire.row(row);
        NodeId* src = cell_inputs_.data() + (static_cast<std::size_t>(c) * ur + i - 1) * b;
        for (std::size_t j = 0; j < b; ++j) {
          src[j] = full ? ((src[j] - 1 + shifts[j]) % r + r) % r + 1
                        : genome_.topology.shift_source(id, src[j], shifts[j]);
        }
      }
      if (n.functional) {
        std::uint32_t row = 0;
        for (NodeId ctl : n.functional_controls) row = (row << 1) | bit(states_[static_cast<std::size_t>(ctl)], c);
        Word& table = cell_tables_[static_cast<std::size_t>(c) * ur + i - 1];
        table = refunc_step(TruthTable(arity_, table), n.refunc[row]).bits();
      }
    }
  }
  std::swap(states_, next_);
}

StepRecord SlicedSurface::movement_step() {
  for (int i = 0; i < cfg_.cycles_per_step; ++i) global_cycle();
  StepRecord rec;
  rec.step = step_;
  for (int cell : object_.cells(cfg_.cols)) {
    rec.cells.push_back(cell + cfg_.cell_indexing);
    rec.decisions.push_back(decode_direction(state(cell, cfg_.output_nodes[0]), state(cell, cfg_.output_nodes[1])));
  }
  const bool unanimous = std::all_of(rec.decisions.begin(), rec.decisions.end(),
                                     [&](Direction d) { return d == rec.decisions.front(); });
  if (unanimous && !rec.decisions.empty()) rec.moved = try_move(object_, rec.decisions.front(), cfg_);
  if (rec.moved) refresh_sensors();
  rec.after = object_;
  ++step_;
  return rec;
}

namespace {

ScenarioResult scenario_result(const ObjectPlacement& start, const ObjectPlacement& end, const ObjectSpec& obj,
                               const SurfaceConfig& cfg) {
  ScenarioResult out;
  out.final_placement = end;
  const int drow = end.row - start.row;
  const int dcol = end.middle_col() - start.middle_col();
  const auto t = static_cast<std::size_t>(obj.target);
  out.displacement = drow * kRowStep[t] + dcol * kColStep[t];
  out.distance = std::abs(end.row - cfg.reference_row()) + std::abs(end.middle_col() - cfg.reference_col());
  return out;
}

}  // namespace

ScenarioResult run_scenario(const NetworkGenome& genome, const ObjectSpec& obj, const SurfaceConfig& cfg,
                            const StepSink& sink) {
  if (cfg.cell_count() <= SlicedSurface::kMaxCells) {
    SlicedSurface s(genome, obj, cfg);
    const ObjectPlacement start = s.object();
    for (int i = 0; i < cfg.steps_per_scenario; ++i) {
      StepRecord rec = s.movement_step();
      if (sink) sink(rec);
    }
    return scenario_result(start, s.object(), obj, cfg);
  }
  SurfaceState s = init_scenario(genome, obj, cfg);
  const ObjectPlacement start = s.object;
  for (int i = 0; i < cfg.steps_per_scenario; ++i) {
    StepRecord rec = movement_step(s, cfg);
    if (sink) sink(rec);
  }
  return scenario_result(start, s.object, obj, cfg);
}

int scenario_fitness(const ScenarioResult& r, const SurfaceConfig& cfg) {
  return cfg.signed_fitness ? std::max(0, r.displacement) : r.distance;
}

double evaluate_surface(const NetworkGenome& genome, const SurfaceConfig& cfg) {
  const int a = scenario_fitness(run_scenario(genome, ObjectSpec::north_3x1(), cfg), cfg);
  const int b = scenario_fitness(run_scenario(genome, ObjectSpec::south_5x1(), cfg), cfg);
  return a + b;
}

int scenario_bound(const ObjectSpec& obj, const SurfaceConfig& cfg) {
  ObjectPlacement p = initial_placement(obj, cfg);
  int moved = 0;
  for (int i = 0; i < cfg.steps_per_scenario && try_move(p, obj.target, cfg); ++i) ++moved;
  return moved;
}

}  // namespace rbn
