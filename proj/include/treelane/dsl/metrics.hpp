#pragma once

#include <algorithm>
#include <variant>

#include "treelane/dsl/ast.hpp"

namespace treelane::dsl {

// Structural size of a policy tree. Nodes count decision nodes and leaves;
// branches are parent->child AST edges, so branch_count = node_count - 1;
// depth is the maximum number of nodes on a root-to-leaf path.
struct TreeMetrics {
  int node_count = 0;
  int branch_count = 0;
  int depth = 0;

  friend bool operator==(const TreeMetrics&, const TreeMetrics&) = default;
};

namespace detail {

inline TreeMetrics metrics_of(const Node& n) {
  if (std::holds_alternative<Leaf>(n.v)) return TreeMetrics{1, 0, 1};
  const auto& d = std::get<DecisionNode>(n.v);
  TreeMetrics out{1, 0, 0};
  int max_child_depth = 0;
  auto add_child = [&](const Node& child) {
    TreeMetrics m = metrics_of(child);
    out.node_count += m.node_count;
    out.branch_count += 1 + m.branch_count;
    max_child_depth = std::max(max_child_depth, m.depth);
  };
  for (const Arm& arm : d.arms) add_child(*arm.child);
  add_child(*d.else_child);
  out.depth = 1 + max_child_depth;
  return out;
}

}  // namespace detail

inline TreeMetrics metrics(const PolicyTree& tree) {
  if (!tree.root) return TreeMetrics{};
  return detail::metrics_of(*tree.root);
}

}  // namespace treelane::dsl
