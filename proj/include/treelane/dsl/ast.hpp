#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "treelane/action.hpp"
#include "treelane/features.hpp"

namespace treelane::dsl {

struct SourcePos {
  int line = 0;  // 1-based; 0 means "no position" (API-built nodes)
  int col = 0;
};

enum class BinaryOp { Add, Sub, Mul, Div, Lt, Le, Gt, Ge, Eq, Ne, And, Or };
enum class UnaryOp { Neg, Not };
enum class Callee { Min, Max, Abs };

inline constexpr std::string_view binary_op_token(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::And: return "and";
    case BinaryOp::Or: return "or";
  }
  return "?";
}

inline constexpr std::string_view callee_token(Callee c) {
  switch (c) {
    case Callee::Min: return "min";
    case Callee::Max: return "max";
    case Callee::Abs: return "abs";
  }
  return "?";
}

inline constexpr int callee_arity(Callee c) { return c == Callee::Abs ? 1 : 2; }

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct NumberLit {
  double value = 0.0;
};

// The INF literal. Evaluates to the kInf sentinel but is kept as a distinct
// node so formatting round-trips.
struct InfLit {};

struct FeatureRef {
  std::string name;
  int index = -1;  // position in kFeatures; -1 when the name is unknown
};

struct UnaryExpr {
  UnaryOp op;
  ExprPtr operand;
};

struct BinaryExpr {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct CallExpr {
  Callee callee;
  std::vector<ExprPtr> args;
};

struct Expr {
  std::variant<NumberLit, InfLit, FeatureRef, UnaryExpr, BinaryExpr, CallExpr> node;
  SourcePos pos;
};

struct Node;
using NodePtr = std::unique_ptr<Node>;

struct Leaf {
  Action action = Action::Idle;
};

struct Arm {
  ExprPtr condition;
  NodePtr child;
};

// A multi-way decision: ordered conditional arms plus a mandatory else child.
// The first arm whose condition holds wins, in source order.
struct DecisionNode {
  std::vector<Arm> arms;
  NodePtr else_child;
};

struct Node {
  std::variant<Leaf, DecisionNode> v;
  SourcePos pos;
};

struct PolicyTree {
  std::string name;
  NodePtr root;
};

// ---- construction helpers (parser, tests, fixtures) ----

inline ExprPtr make_number(double v, SourcePos pos = {}) {
  return std::make_unique<Expr>(Expr{NumberLit{v}, pos});
}

inline ExprPtr make_inf(SourcePos pos = {}) {
  return std::make_unique<Expr>(Expr{InfLit{}, pos});
}

inline ExprPtr make_feature(std::string name, SourcePos pos = {}) {
  int idx = feature_index(name);
  return std::make_unique<Expr>(Expr{FeatureRef{std::move(name), idx}, pos});
}

inline ExprPtr make_unary(UnaryOp op, ExprPtr operand, SourcePos pos = {}) {
  return std::make_unique<Expr>(Expr{UnaryExpr{op, std::move(operand)}, pos});
}

inline ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, SourcePos pos = {}) {
  return std::make_unique<Expr>(Expr{BinaryExpr{op, std::move(lhs), std::move(rhs)}, pos});
}

inline ExprPtr make_call(Callee callee, std::vector<ExprPtr> args, SourcePos pos = {}) {
  return std::make_unique<Expr>(Expr{CallExpr{callee, std::move(args)}, pos});
}

inline NodePtr make_leaf(Action a, SourcePos pos = {}) {
  return std::make_unique<Node>(Node{Leaf{a}, pos});
}

inline NodePtr make_decision(std::vector<Arm> arms, NodePtr else_child, SourcePos pos = {}) {
  return std::make_unique<Node>(Node{DecisionNode{std::move(arms), std::move(else_child)}, pos});
}

// ---- deep copy ----

inline ExprPtr clone(const Expr& e);
inline NodePtr clone(const Node& n);

inline ExprPtr clone(const Expr& e) {
  return std::visit(
      [&](const auto& v) -> ExprPtr {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, NumberLit> || std::is_same_v<T, InfLit> ||
                      std::is_same_v<T, FeatureRef>) {
          return std::make_unique<Expr>(Expr{v, e.pos});
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          return std::make_unique<Expr>(Expr{UnaryExpr{v.op, clone(*v.operand)}, e.pos});
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          return std::make_unique<Expr>(
              Expr{BinaryExpr{v.op, clone(*v.lhs), clone(*v.rhs)}, e.pos});
        } else {
          std::vector<ExprPtr> args;
          args.reserve(v.args.size());
          for (const ExprPtr& a : v.args) args.push_back(clone(*a));
          return std::make_unique<Expr>(Expr{CallExpr{v.callee, std::move(args)}, e.pos});
        }
      },
      e.node);
}

inline NodePtr clone(const Node& n) {
  if (const auto* leaf = std::get_if<Leaf>(&n.v)) {
    return std::make_unique<Node>(Node{*leaf, n.pos});
  }
  const auto& d = std::get<DecisionNode>(n.v);
  DecisionNode out;
  out.arms.reserve(d.arms.size());
  for (const Arm& arm : d.arms) {
    out.arms.push_back(Arm{clone(*arm.condition), clone(*arm.child)});
  }
  out.else_child = clone(*d.else_child);
  return std::make_unique<Node>(Node{std::move(out), n.pos});
}

inline PolicyTree clone(const PolicyTree& t) {
  return PolicyTree{t.name, t.root ? clone(*t.root) : nullptr};
}

// ---- structural equality (ignores source positions) ----

inline bool structurally_equal(const Expr& a, const Expr& b);
inline bool structurally_equal(const Node& a, const Node& b);

inline bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* na = std::get_if<NumberLit>(&a.node)) {
    return na->value == std::get<NumberLit>(b.node).value;
  }
  if (std::holds_alternative<InfLit>(a.node)) return true;
  if (const auto* fa = std::get_if<FeatureRef>(&a.node)) {
    return fa->name == std::get<FeatureRef>(b.node).name;
  }
  if (const auto* ua = std::get_if<UnaryExpr>(&a.node)) {
    const auto& ub = std::get<UnaryExpr>(b.node);
    return ua->op == ub.op && structurally_equal(*ua->operand, *ub.operand);
  }
  if (const auto* ba = std::get_if<BinaryExpr>(&a.node)) {
    const auto& bb = std::get<BinaryExpr>(b.node);
    return ba->op == bb.op && structurally_equal(*ba->lhs, *bb.lhs) &&
           structurally_equal(*ba->rhs, *bb.rhs);
  }
  const auto& ca = std::get<CallExpr>(a.node);
  const auto& cb = std::get<CallExpr>(b.node);
  if (ca.callee != cb.callee || ca.args.size() != cb.args.size()) return false;
  for (size_t i = 0; i < ca.args.size(); ++i) {
    if (!structurally_equal(*ca.args[i], *cb.args[i])) return false;
  }
  return true;
}

inline bool structurally_equal(const Node& a, const Node& b) {
  if (a.v.index() != b.v.index()) return false;
  if (const auto* la = std::get_if<Leaf>(&a.v)) {
    return la->action == std::get<Leaf>(b.v).action;
  }
  const auto& da = std::get<DecisionNode>(a.v);
  const auto& db = std::get<DecisionNode>(b.v);
  if (da.arms.size() != db.arms.size()) return false;
  for (size_t i = 0; i < da.arms.size(); ++i) {
    if (!structurally_equal(*da.arms[i].condition, *db.arms[i].condition)) return false;
    if (!structurally_equal(*da.arms[i].child, *db.arms[i].child)) return false;
  }
  return structurally_equal(*da.else_child, *db.else_child);
}

inline bool structurally_equal(const PolicyTree& a, const PolicyTree& b) {
  if (a.name != b.name) return false;
  if (!a.root || !b.root) return a.root == b.root;
  return structurally_equal(*a.root, *b.root);
}

}  // namespace treelane::dsl
