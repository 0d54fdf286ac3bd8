#include "doctest.h"

#include <algorithm>
#include <set>

#include "rbn/surface.hpp"
#include "support/fixtures.hpp"

using namespace rbn;

namespace {

NetworkGenome controller(const char* fill = "0000") { return testing::uniform_genome(20, fill); }

// Every cell decodes North.
NetworkGenome always_north() { return controller(); }

// Node 3 latches the east sensor; node 20 is its negation, so the east end of
// an object decodes East and every other covered cell decodes North.
NetworkGenome east_end_dissent() {
  auto g = controller();
  g.node(3).function = TruthTable::parse("0011");
  g.node(3).inputs = {3, 3};
  g.node(20).function = TruthTable::parse("1100");
  g.node(20).inputs = {3, 3};
  return g;
}

std::set<int> occupied(const SurfaceState& s, const SurfaceConfig& cfg) {
  std::set<int> out;
  for (int cell = 0; cell < cfg.cell_count(); ++cell)
    if (s.object.covers(cell / cfg.cols, cell % cfg.cols)) out.insert(cell);
  return out;
}

GenomeParams surface_params(Rng& rng) {
  const DynamismMode modes[] = {DynamismMode::Static, DynamismMode::Structural, DynamismMode::Functional,
                                DynamismMode::Both};
  return SurfaceConfig{}.controller_params(modes[rng.below(4)]);
}

}  // namespace

TEST_CASE("direction code") {
  CHECK(decode_direction(0, 0) == Direction::North);
  CHECK(decode_direction(0, 1) == Direction::East);
  CHECK(decode_direction(1, 0) == Direction::South);
  CHECK(decode_direction(1, 1) == Direction::West);
}

TEST_CASE("default surface and controller layout") {
  const SurfaceConfig cfg;
  CHECK(cfg.cell_count() == 144);
  CHECK(cfg.reference_row() == 6);
  CHECK(cfg.reference_col() == 4);
  const auto p = cfg.controller_params(DynamismMode::Both);
  CHECK(p.node_count == 20);
  CHECK(p.arity == 2);
  CHECK(p.topology.kind() == TopologyKind::Full);
  CHECK(p.function_set == FunctionSet::All);
  SurfaceConfig bad;
  bad.comm_source = 10;
  CHECK_NOTHROW(bad.validate());
  bad.comm_source = 3;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad.comm_source = 10;
  bad.output_nodes = {1, 20};
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("initial occupancy") {
  const SurfaceConfig cfg;
  const auto g = always_north();
  const auto s3 = init_scenario(g, ObjectSpec::north_3x1(), cfg);
  CHECK(occupied(s3, cfg) == std::set<int>{75, 76, 77});
  const auto s5 = init_scenario(g, ObjectSpec::south_5x1(), cfg);
  CHECK(occupied(s5, cfg) == std::set<int>{74, 75, 76, 77, 78});
  CHECK(s5.controllers.size() == 144);
  for (const auto& c : s5.controllers)
    for (Bit b : c.states()) CHECK(b == 0);

  SurfaceConfig one = cfg;
  one.cell_indexing = 1;
  const auto p = initial_placement(ObjectSpec::north_3x1(), one);
  std::vector<int> numbered;
  for (int c : p.cells(one.cols)) numbered.push_back(c + 1);
  CHECK(numbered == std::vector<int>{75, 76, 77});
}

TEST_CASE("sensor and comm reads") {
  const SurfaceConfig cfg;
  auto s = init_scenario(always_north(), ObjectSpec::north_3x1(), cfg);
  auto in = cell_inputs(s, cfg, 76);
  CHECK(*in.get(1) == 1);
  CHECK(*in.get(2) == 0);
  CHECK(*in.get(3) == 1);
  CHECK(*in.get(5) == 1);
  in = cell_inputs(s, cfg, 77);
  CHECK(*in.get(3) == 0);
  CHECK(*in.get(5) == 1);
  in = cell_inputs(s, cfg, 64);  // directly north of 76
  CHECK(*in.get(1) == 0);
  CHECK(*in.get(4) == 1);
  for (NodeId n = 6; n <= 20; ++n)
    if (n > 9) CHECK_FALSE(in.get(n).has_value());

  in = cell_inputs(s, cfg, 0);
  for (NodeId n = 1; n <= 9; ++n) CHECK(*in.get(n) == 0);
}

TEST_CASE("off-grid neighbours behave as permanently-zero stubs") {
  SurfaceConfig cfg;
  Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = testing::random_dynamic_genome(surface_params(rng), rng);
    g.node(18).function = TruthTable::parse("1111");  // every on-grid neighbour broadcasts 1
    g.node(18).structural = g.node(18).functional = false;
    auto s = init_scenario(g, ObjectSpec::north_3x1(), cfg);
    const int corner = trial % 2 ? 0 : cfg.cell_count() - 1;
    RuntimeNetwork shadow(g);
    for (int c = 0; c < 25; ++c) {
      const auto in = cell_inputs(s, cfg, corner);
      InputOverride stub(20);
      for (int d = 0; d < 4; ++d) {
        const int r = corner / cfg.cols + (d == 0 ? -1 : d == 2 ? 1 : 0);
        const int col = corner % cfg.cols + (d == 1 ? 1 : d == 3 ? -1 : 0);
        const bool on = r >= 0 && r < cfg.rows && col >= 0 && col < cfg.cols;
        stub.set(cfg.comm_nodes[static_cast<std::size_t>(d)], on ? Bit{c > 0} : Bit{0});
        stub.set(cfg.sensor_nodes[static_cast<std::size_t>(d) + 1], 0);
      }
      stub.set(cfg.sensor_nodes[0], 0);
      for (NodeId n = 1; n <= 9; ++n) REQUIRE(in.get(n) == stub.get(n));
      shadow.step(stub);
      surface_global_cycle(s, cfg);
      REQUIRE(shadow.same_state(s.controllers[static_cast<std::size_t>(corner)]));
    }
  }
}

TEST_CASE("lockstep cycle reads committed neighbour states only") {
  SurfaceConfig cfg;
  cfg.rows = 4;
  cfg.cols = 5;
  cfg.reference_cell = 7;
  Rng rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = testing::random_dynamic_genome(surface_params(rng), rng, 0.4);
    auto s = init_scenario(g, ObjectSpec::north_3x1(), cfg);
    for (int c = 0; c < 15; ++c) {
      std::vector<testing::Snapshot> expect;
      for (int cell = 0; cell < cfg.cell_count(); ++cell) {
        const auto in = cell_inputs(s, cfg, cell);
        std::map<NodeId, Bit> ovm;
        for (NodeId n = 1; n <= 9; ++n) ovm[n] = *in.get(n);
        expect.push_back(testing::oracle_step(g, testing::snapshot(s.controllers[static_cast<std::size_t>(cell)]), ovm));
      }
      surface_global_cycle(s, cfg);
      for (int cell = 0; cell < cfg.cell_count(); ++cell)
        REQUIRE(testing::snapshot(s.controllers[static_cast<std::size_t>(cell)]) == expect[static_cast<std::size_t>(cell)]);
    }
  }
}

TEST_CASE("bit-sliced engine matches per-controller simulation") {
  Rng rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    SurfaceConfig cfg;
    if (trial % 3 == 1) {
      cfg.rows = 7;
      cfg.cols = 9;
      cfg.reference_cell = 31;
    } else if (trial % 3 == 2) {
      cfg.rows = 16;
      cfg.cols = 16;
      cfg.reference_cell = 120;
    }
    const auto g = testing::random_dynamic_genome(surface_params(rng), rng, 0.3);
    const auto obj = trial % 2 ? ObjectSpec::north_3x1() : ObjectSpec::south_5x1();
    auto ref = init_scenario(g, obj, cfg);
    SlicedSurface fast(g, obj, cfg);
    for (int step = 0; step < 4; ++step) {
      const auto a = movement_step(ref, cfg);
      const auto b = fast.movement_step();
      REQUIRE(a.cells == b.cells);
      REQUIRE(a.decisions == b.decisions);
      REQUIRE(a.moved == b.moved);
      REQUIRE(a.after == b.after);
      for (int cell = 0; cell < cfg.cell_count(); ++cell)
        for (NodeId n = 1; n <= 20; ++n) {
          const auto& rt = ref.controllers[static_cast<std::size_t>(cell)];
          REQUIRE(rt.state(n) == fast.state(cell, n));
          REQUIRE(rt.live_table(n) == fast.live_table(cell, n));
          const auto x = rt.live_inputs(n);
          const auto y = fast.live_inputs(cell, n);
          REQUIRE(std::equal(x.begin(), x.end(), y.begin(), y.end()));
        }
    }
  }
}

TEST_CASE("consensus moves and edge clamp") {
  const SurfaceConfig cfg;
  auto s = init_scenario(always_north(), ObjectSpec::north_3x1(), cfg);
  auto rec = movement_step(s, cfg);
  CHECK(rec.moved);
  CHECK(rec.cells == std::vector<int>{75, 76, 77});
  CHECK(rec.after == ObjectPlacement{5, 3, 3});

  auto d = init_scenario(east_end_dissent(), ObjectSpec::north_3x1(), cfg);
  rec = movement_step(d, cfg);
  CHECK_FALSE(rec.moved);
  CHECK(rec.decisions == std::vector<Direction>{Direction::North, Direction::North, Direction::East});

  auto edge = init_scenario(always_north(), ObjectSpec::north_3x1(), cfg);
  edge.object.row = 0;
  rec = movement_step(edge, cfg);
  CHECK_FALSE(rec.moved);
  CHECK(rec.after.row == 0);

  ObjectPlacement p{0, 9, 3};
  CHECK_FALSE(try_move(p, Direction::East, cfg));
  CHECK(try_move(p, Direction::West, cfg));
  CHECK(p.first_col == 8);
}

TEST_CASE("scenario scores") {
  SurfaceConfig cfg;
  const auto north = always_north();
  auto r = run_scenario(north, ObjectSpec::north_3x1(), cfg);
  CHECK(r.displacement == 6);
  CHECK(r.final_placement.row == 0);
  r = run_scenario(north, ObjectSpec::south_5x1(), cfg);
  CHECK(r.displacement == -6);
  CHECK(scenario_fitness(r, cfg) == 0);
  CHECK(evaluate_surface(north, cfg) == 6);

  CHECK(evaluate_surface(east_end_dissent(), cfg) == 0);
  CHECK(evaluate_surface(controller(), cfg) == evaluate_surface(controller(), cfg));

  cfg.signed_fitness = false;
  CHECK(evaluate_surface(north, cfg) == 12);
}

TEST_CASE("score bound equals a scripted perfect sorter") {
  const SurfaceConfig cfg;
  int total = 0;
  for (const auto& obj : {ObjectSpec::north_3x1(), ObjectSpec::south_5x1()}) {
    auto p = initial_placement(obj, cfg);
    const int start = p.row;
    for (int step = 0; step < cfg.steps_per_scenario; ++step) try_move(p, obj.target, cfg);
    const int moved = obj.target == Direction::North ? start - p.row : p.row - start;
    CHECK(moved == scenario_bound(obj, cfg));
    total += moved;
  }
  CHECK(total == 11);
}

TEST_CASE("object stays whole and on the grid") {
  Rng rng(44);
  const SurfaceConfig cfg;
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = testing::random_dynamic_genome(surface_params(rng), rng);
    for (const auto& obj : {ObjectSpec::north_3x1(), ObjectSpec::south_5x1()}) {
      int steps = 0;
      run_scenario(g, obj, cfg, [&](const StepRecord& rec) {
        ++steps;
        CHECK(rec.cells.size() == static_cast<std::size_t>(obj.length));
        CHECK(rec.after.length == obj.length);
        CHECK(rec.after.row >= 0);
        CHECK(rec.after.row < cfg.rows);
        CHECK(rec.after.first_col >= 0);
        CHECK(rec.after.first_col + obj.length <= cfg.cols);
      });
      CHECK(steps == cfg.steps_per_scenario);
    }
  }
}

TEST_CASE("controller shape is checked") {
  CHECK_THROWS_AS(evaluate_surface(testing::uniform_genome(25, "0000"), SurfaceConfig{}), Error);
}
