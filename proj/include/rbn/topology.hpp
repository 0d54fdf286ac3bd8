#pragma once

#include <memory>
#include <span>
#include <vector>

#include "rbn/errors.hpp"

namespace rbn {

enum class TopologyKind { Full, Grid };

// Legal connection sources for each node. Node ids are 1-based; grid ids are
// row-major. Copies share the precomputed neighbour lists.
class Topology {
 public:
  Topology() : Topology(full(1)) {}

  static Topology full(int node_count);
  static Topology grid(int rows, int cols);

  TopologyKind kind() const { return kind_; }
  int node_count() const { return rows_ * cols_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  // FULL: 1..R including the node itself. GRID: Moore neighbours in
  // row-major order over the 3x3 block, the node itself excluded.
  std::span<const NodeId> legal_sources(NodeId node) const;
  bool is_legal(NodeId node, NodeId source) const;

  // Moves `current` by `shift` positions along the node's legal-source list,
  // wrapping at the ends. For FULL this is ((current - 1 + shift) mod R) + 1.
  NodeId shift_source(NodeId node, NodeId current, int shift) const;

  friend bool operator==(const Topology& a, const Topology& b) {
    return a.kind_ == b.kind_ && a.rows_ == b.rows_ && a.cols_ == b.cols_;
  }

 private:
  Topology(TopologyKind kind, int rows, int cols);
  void check_node(NodeId node) const;

  TopologyKind kind_;
  int rows_;
  int cols_;
  // FULL keeps one shared list; GRID keeps one list per node (index node-1).
  std::shared_ptr<const std::vector<std::vector<NodeId>>> sources_;
};

}  // namespace rbn
