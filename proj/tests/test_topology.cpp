#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "rbn/topology.hpp"
#include "support/fixtures.hpp"

using namespace rbn;

namespace {

std::vector<NodeId> list(const Topology& t, NodeId n) {
  auto s = t.legal_sources(n);
  return {s.begin(), s.end()};
}

}  // namespace

TEST_CASE("grid neighbour lists") {
  const auto g = Topology::grid(5, 5);
  CHECK(list(g, 1) == std::vector<NodeId>{2, 6, 7});
  CHECK(list(g, 13) == std::vector<NodeId>{7, 8, 9, 12, 14, 17, 18, 19});
  CHECK(list(g, 25) == std::vector<NodeId>{19, 20, 24});
  CHECK(list(g, 3) == std::vector<NodeId>{2, 4, 7, 8, 9});
  CHECK_FALSE(g.is_legal(1, 25));
  CHECK_FALSE(g.is_legal(13, 13));
}

TEST_CASE("full lists include the node itself") {
  const auto f = Topology::full(6);
  CHECK(list(f, 3) == std::vector<NodeId>{1, 2, 3, 4, 5, 6});
  CHECK(f.is_legal(3, 3));
}

TEST_CASE("grid sizes are 3, 5 or 8 by position") {
  for (int rows = 3; rows <= 7; ++rows)
    for (int cols = 3; cols <= 9; ++cols) {
      const auto g = Topology::grid(rows, cols);
      for (NodeId n = 1; n <= rows * cols; ++n) {
        const int r = (n - 1) / cols, c = (n - 1) % cols;
        const bool edge_r = r == 0 || r == rows - 1, edge_c = c == 0 || c == cols - 1;
        const std::size_t expect = edge_r && edge_c ? 3 : (edge_r || edge_c ? 5 : 8);
        CHECK(g.legal_sources(n).size() == expect);
      }
    }
}

TEST_CASE("shift wrapping examples") {
  const auto f = Topology::full(6);
  CHECK(f.shift_source(3, 4, -1) == 3);
  CHECK(f.shift_source(3, 5, +1) == 6);
  CHECK(f.shift_source(3, 6, +1) == 1);
  CHECK(f.shift_source(3, 1, -1) == 6);
  CHECK(f.shift_source(3, 2, 0) == 2);
  const auto g = Topology::grid(5, 5);
  CHECK(g.shift_source(1, 7, +1) == 2);
  CHECK(g.shift_source(1, 2, -1) == 7);
  CHECK(g.shift_source(13, 7, -1) == 19);
  CHECK(g.shift_source(13, 7, 5) == 17);
}

TEST_CASE("shifts stay legal and are invertible") {
  std::vector<Topology> tops;
  for (int r = 1; r <= 10; ++r) tops.push_back(Topology::full(r));
  tops.push_back(Topology::grid(5, 5));
  tops.push_back(Topology::grid(3, 4));
  tops.push_back(Topology::grid(12, 12));
  for (const auto& t : tops)
    for (NodeId n = 1; n <= t.node_count(); ++n)
      for (NodeId cur : t.legal_sources(n))
        for (int s = -kMaxShift; s <= kMaxShift; ++s) {
          const NodeId to = t.shift_source(n, cur, s);
          CHECK(t.is_legal(n, to));
          CHECK(t.shift_source(n, to, -s) == cur);
        }
}

TEST_CASE("full wrapping matches the modular formula") {
  for (int r = 1; r <= 12; ++r) {
    const auto f = Topology::full(r);
    for (NodeId cur = 1; cur <= r; ++cur)
      for (int s = -kMaxShift; s <= kMaxShift; ++s) {
        const int expect = (((cur - 1 + s) % r) + r) % r + 1;
        CHECK(f.shift_source(1, cur, s) == expect);
      }
  }
}

TEST_CASE("contract violations") {
  const auto g = Topology::grid(5, 5);
  CHECK_THROWS_AS(g.legal_sources(0), ContractError);
  CHECK_THROWS_AS(g.legal_sources(26), ContractError);
  CHECK_THROWS_AS(g.shift_source(1, 25, 1), ContractError);
  CHECK_THROWS_AS(Topology::full(6).shift_source(3, 7, 1), ContractError);
}

TEST_CASE("genome validation") {
  auto g = testing::rewiring_example();
  CHECK(validate_genome(g).empty());

  SUBCASE("illegal source names node and field") {
    g.node(3).inputs[1] = 7;
    const auto v = validate_genome(g);
    REQUIRE(v.size() == 1);
    CHECK(v[0].node == 3);
    CHECK(v[0].field == "inputs[1]");
    CHECK_THROWS_AS(require_valid(g), ValidationError);
  }
  SUBCASE("grid edge node cannot reach the far corner") {
    GenomeParams p;
    Rng rng(1);
    auto gg = random_genome(p, rng);
    gg.node(1).inputs[0] = 25;
    const auto v = validate_genome(gg);
    REQUIRE(v.size() == 1);
    CHECK(v[0].node == 1);
  }
  SUBCASE("gate set rejects XOR") {
    GenomeParams p;
    Rng rng(1);
    auto gg = random_genome(p, rng);
    gg.node(4).function = TruthTable::parse("0110");
    const auto v = validate_genome(gg);
    REQUIRE(v.size() == 1);
    CHECK(v[0].node == 4);
    CHECK(v[0].field == "function");
  }
  SUBCASE("flag must match the mode") {
    g.node(2).functional = true;
    const auto v = validate_genome(g);
    REQUIRE(v.size() == 1);
    CHECK(v[0].node == 2);
    CHECK(v[0].field == "functional");
  }
  SUBCASE("table length must match arity") {
    g.node(5).function = TruthTable::parse("01");
    const auto v = validate_genome(g);
    REQUIRE(v.size() == 1);
    CHECK(v[0].field == "function");
  }
  SUBCASE("control ids are checked too") {
    g.node(6).structural_controls[0] = 0;
    g.node(6).functional_controls[1] = 9;
    CHECK(validate_genome(g).size() == 2);
  }
  SUBCASE("node count must match the topology") {
    g.nodes.pop_back();
    CHECK_FALSE(validate_genome(g).empty());
  }
}
