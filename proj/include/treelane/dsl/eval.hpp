#pragma once

#include <cassert>
#include <cmath>
#include <variant>

#include "treelane/dsl/ast.hpp"
#include "treelane/features.hpp"

namespace treelane::dsl {

// Division by zero never faults: a nonnegative numerator yields +kInf, a
// negative one -kInf. 0/0 therefore reads as +kInf.
inline double eval_div(double num, double den) {
  if (den == 0.0) return num >= 0.0 ? kInf : -kInf;
  return num / den;
}

// Expression evaluation. Booleans are 0/1 doubles; `and`/`or` short-circuit
// (equivalent to strict evaluation since expressions are pure).
inline double eval_expr(const Expr& e, const FeatureView& fv) {
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, NumberLit>) {
          return v.value;
        } else if constexpr (std::is_same_v<T, InfLit>) {
          return kInf;
        } else if constexpr (std::is_same_v<T, FeatureRef>) {
          assert(v.index >= 0 && "evaluate() requires a validated tree");
          return fv.get(v.index);
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          double a = eval_expr(*v.operand, fv);
          return v.op == UnaryOp::Neg ? -a : (a != 0.0 ? 0.0 : 1.0);
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          switch (v.op) {
            case BinaryOp::And:
              if (eval_expr(*v.lhs, fv) == 0.0) return 0.0;
              return eval_expr(*v.rhs, fv) != 0.0 ? 1.0 : 0.0;
            case BinaryOp::Or:
              if (eval_expr(*v.lhs, fv) != 0.0) return 1.0;
              return eval_expr(*v.rhs, fv) != 0.0 ? 1.0 : 0.0;
            default: break;
          }
          double a = eval_expr(*v.lhs, fv);
          double b = eval_expr(*v.rhs, fv);
          switch (v.op) {
            case BinaryOp::Add: return a + b;
            case BinaryOp::Sub: return a - b;
            case BinaryOp::Mul: return a * b;
            case BinaryOp::Div: return eval_div(a, b);
            case BinaryOp::Lt: return a < b ? 1.0 : 0.0;
            case BinaryOp::Le: return a <= b ? 1.0 : 0.0;
            case BinaryOp::Gt: return a > b ? 1.0 : 0.0;
            case BinaryOp::Ge: return a >= b ? 1.0 : 0.0;
            case BinaryOp::Eq: return a == b ? 1.0 : 0.0;
            case BinaryOp::Ne: return a != b ? 1.0 : 0.0;
            default: return 0.0;  // And/Or handled above
          }
        } else {
          static_assert(std::is_same_v<T, CallExpr>);
          double a = eval_expr(*v.args[0], fv);
          if (v.callee == Callee::Abs) return std::fabs(a);
          double b = eval_expr(*v.args[1], fv);
          return v.callee == Callee::Min ? std::fmin(a, b) : std::fmax(a, b);
        }
      },
      e.node);
}

// First arm whose condition is true wins, in source order; the else child
// runs when no arm matches. Pure; total for validated trees.
inline Action evaluate(const Node& node, const FeatureView& fv) {
  const Node* cur = &node;
  for (;;) {
    if (const auto* leaf = std::get_if<Leaf>(&cur->v)) return leaf->action;
    const auto& d = std::get<DecisionNode>(cur->v);
    const Node* next = d.else_child.get();
    for (const Arm& arm : d.arms) {
      if (eval_expr(*arm.condition, fv) != 0.0) {
        next = arm.child.get();
        break;
      }
    }
    cur = next;
  }
}

inline Action evaluate(const PolicyTree& tree, const FeatureView& fv) {
  assert(tree.root && "evaluate() requires a parsed tree");
  return evaluate(*tree.root, fv);
}

}  // namespace treelane::dsl
