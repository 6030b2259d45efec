#pragma once

#include <string>
#include <vector>

#include "treelane/dsl/metrics.hpp"
#include "treelane/harness/table.hpp"

namespace treelane::harness {

// Structural comparison table for a set of policies: node count, branch
// count and depth per tree.
inline std::string tree_report(
    const std::vector<std::pair<std::string, const dsl::PolicyTree*>>& policies) {
  std::vector<std::vector<std::string>> table;
  table.push_back({"Policy", "Nodes", "Branches", "Depth"});
  for (const auto& [label, tree] : policies) {
    dsl::TreeMetrics m = dsl::metrics(*tree);
    table.push_back({label, std::to_string(m.node_count), std::to_string(m.branch_count),
                     std::to_string(m.depth)});
  }
  return render_table(table);
}

}  // namespace treelane::harness
