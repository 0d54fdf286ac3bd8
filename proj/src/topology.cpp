#include "rbn/topology.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace rbn {

namespace {

std::vector<std::vector<NodeId>> grid_sources(int rows, int cols) {
  std::vector<std::vector<NodeId>> out(static_cast<std::size_t>(rows * cols));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      auto& list = out[static_cast<std::size_t>(r * cols + c)];
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          if (dr == 0 && dc == 0) continue;
          const int rr = r + dr;
          const int cc = c + dc;
          if (rr < 0 || rr >= rows || cc < 0 || cc >= cols) continue;
          list.push_back(rr * cols + cc + 1);
        }
      }
    }
  }
  return out;
}

}  // namespace

Topology::Topology(TopologyKind kind, int rows, int cols) : kind_(kind), rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw ContractError("topology needs at least one node");
  if (kind == TopologyKind::Full) {
    std::vector<NodeId> all(static_cast<std::size_t>(cols));
    std::iota(all.begin(), all.end(), 1);
    sources_ = std::make_shared<const std::vector<std::vector<NodeId>>>(1, std::move(all));
  } else {
    if (rows * cols < 2) throw ContractError("grid topology needs at least two cells");
    sources_ = std::make_shared<const std::vector<std::vector<NodeId>>>(grid_sources(rows, cols));
  }
}

Topology Topology::full(int node_count) { return Topology(TopologyKind::Full, 1, node_count); }

Topology Topology::grid(int rows, int cols) { return Topology(TopologyKind::Grid, rows, cols); }

void Topology::check_node(NodeId node) const {
  if (node < 1 || node > node_count())
    throw ContractError("node " + std::to_string(node) + " outside 1.." + std::to_string(node_count()));
}

std::span<const NodeId> Topology::legal_sources(NodeId node) const {
  check_node(node);
  if (kind_ == TopologyKind::Full) return (*sources_)[0];
  return (*sources_)[static_cast<std::size_t>(node - 1)];
}

bool Topology::is_legal(NodeId node, NodeId source) const {
  if (node < 1 || node > node_count()) return false;
  if (kind_ == TopologyKind::Full) return source >= 1 && source <= node_count();
  const auto list = legal_sources(node);
  return std::find(list.begin(), list.end(), source) != list.end();
}

NodeId Topology::shift_source(NodeId node, NodeId current, int shift) const {
  if (!is_legal(node, current))
    throw ContractError("source " + std::to_string(current) + " is not legal for node " +
                        std::to_string(node));
  if (kind_ == TopologyKind::Full) {
    const int r = node_count();
    return ((current - 1 + shift) % r + r) % r + 1;
  }
  const auto list = legal_sources(node);
  const int n = static_cast<int>(list.size());
  const int pos = static_cast<int>(std::find(list.begin(), list.end(), current) - list.begin());
  return list[static_cast<std::size_t>(((pos + shift) % n + n) % n)];
}

}  // namespace rbn
