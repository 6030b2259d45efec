#pragma once

#include <sstream>
#include <string>
#include <variant>

#include "treelane/dsl/ast.hpp"
#include "treelane/dsl/format.hpp"

namespace treelane::dsl {

namespace detail {

inline std::string dot_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

inline int dot_node(const Node& n, std::ostringstream& out, int& next_id) {
  int id = next_id++;
  if (const auto* leaf = std::get_if<Leaf>(&n.v)) {
    out << "  n" << id << " [shape=box, label=\"" << action_token(leaf->action) << "\"];\n";
    return id;
  }
  const auto& d = std::get<DecisionNode>(n.v);
  out << "  n" << id << " [shape=diamond, label=\"if\"];\n";
  for (const Arm& arm : d.arms) {
    int child = dot_node(*arm.child, out, next_id);
    out << "  n" << id << " -> n" << child << " [label=\""
        << dot_escape(format_expr(*arm.condition)) << "\"];\n";
  }
  int else_id = dot_node(*d.else_child, out, next_id);
  out << "  n" << id << " -> n" << else_id << " [label=\"else\"];\n";
  return id;
}

}  // namespace detail

// DOT digraph with one graph node per AST node and one labelled edge per
// branch (condition text on arm edges, "else" on the fallback edge).
inline std::string export_dot(const PolicyTree& tree) {
  std::ostringstream out;
  out << "digraph \"" << detail::dot_escape(tree.name) << "\" {\n";
  if (tree.root) {
    int next_id = 0;
    detail::dot_node(*tree.root, out, next_id);
  }
  out << "}\n";
  return out.str();
}

}  // namespace treelane::dsl
