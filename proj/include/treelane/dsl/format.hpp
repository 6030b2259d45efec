#pragma once

#include <charconv>
#include <string>
#include <variant>

#include "treelane/dsl/ast.hpp"

namespace treelane::dsl {

// Shortest decimal form that round-trips the exact double.
inline std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace detail {

// Binding strength; larger binds tighter. Mirrors the parser's levels.
inline int precedence(const Expr& e) {
  if (const auto* b = std::get_if<BinaryExpr>(&e.node)) {
    switch (b->op) {
      case BinaryOp::Or: return 1;
      case BinaryOp::And: return 2;
      case BinaryOp::Lt:
      case BinaryOp::Le:
      case BinaryOp::Gt:
      case BinaryOp::Ge:
      case BinaryOp::Eq:
      case BinaryOp::Ne: return 4;
      case BinaryOp::Add:
      case BinaryOp::Sub: return 5;
      case BinaryOp::Mul:
      case BinaryOp::Div: return 6;
    }
  }
  if (const auto* u = std::get_if<UnaryExpr>(&e.node)) {
    return u->op == UnaryOp::Not ? 3 : 7;
  }
  return 8;  // literals, features, calls, (already) parenthesized forms
}

inline void format_expr_into(const Expr& e, std::string& out, int min_prec);

inline void format_child(const Expr& child, std::string& out, int min_prec) {
  if (precedence(child) < min_prec) {
    out += '(';
    format_expr_into(child, out, 0);
    out += ')';
  } else {
    format_expr_into(child, out, 0);
  }
}

inline void format_expr_into(const Expr& e, std::string& out, int /*min_prec*/) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, NumberLit>) {
          out += format_number(v.value);
        } else if constexpr (std::is_same_v<T, InfLit>) {
          out += "INF";
        } else if constexpr (std::is_same_v<T, FeatureRef>) {
          out += v.name;
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          int p = precedence(e);
          if (v.op == UnaryOp::Not) {
            out += "not ";
            format_child(*v.operand, out, p);
          } else {
            out += '-';
            format_child(*v.operand, out, p);
          }
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          int p = precedence(e);
          bool comparison = p == 4;
          // left-associative chains reuse the level on the left; comparisons
          // do not chain, so both sides must bind strictly tighter
          format_child(*v.lhs, out, comparison ? p + 1 : p);
          out += ' ';
          out += binary_op_token(v.op);
          out += ' ';
          format_child(*v.rhs, out, p + 1);
        } else {
          static_assert(std::is_same_v<T, CallExpr>);
          out += callee_token(v.callee);
          out += '(';
          for (size_t i = 0; i < v.args.size(); ++i) {
            if (i) out += ", ";
            format_expr_into(*v.args[i], out, 0);
          }
          out += ')';
        }
      },
      e.node);
}

inline void format_node(const Node& n, std::string& out, int indent) {
  auto pad = [&](int level) { out.append(static_cast<size_t>(level) * 2, ' '); };
  if (const auto* leaf = std::get_if<Leaf>(&n.v)) {
    pad(indent);
    out += action_token(leaf->action);
    out += '\n';
    return;
  }
  const auto& d = std::get<DecisionNode>(n.v);
  pad(indent);
  for (size_t i = 0; i < d.arms.size(); ++i) {
    out += i == 0 ? "if " : "elif ";
    format_expr_into(*d.arms[i].condition, out, 0);
    out += " {\n";
    format_node(*d.arms[i].child, out, indent + 1);
    pad(indent);
    out += "} ";
  }
  out += "else {\n";
  format_node(*d.else_child, out, indent + 1);
  pad(indent);
  out += "}\n";
}

}  // namespace detail

inline std::string format_expr(const Expr& e) {
  std::string out;
  detail::format_expr_into(e, out, 0);
  return out;
}

// Canonical source text. parse(format(t)) is structurally equal to t, and
// format is idempotent on parse round-trips.
inline std::string format(const PolicyTree& tree) {
  std::string out = "policy \"";
  for (char c : tree.name) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += "\" {\n";
  if (tree.root) detail::format_node(*tree.root, out, 1);
  out += "}\n";
  return out;
}

}  // namespace treelane::dsl
