#pragma once

// Reference interpreter used as the oracle for evaluator equivalence. It is
// deliberately written unlike the production evaluator: typed values, a
// name-keyed feature map, no short-circuiting, no index-based dispatch.

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>

#include "treelane/dsl/ast.hpp"
#include "treelane/features.hpp"

namespace naive {

using treelane::FeatureView;
using treelane::kInf;
namespace dsl = treelane::dsl;

using Value = std::variant<double, bool>;

inline std::map<std::string, Value> feature_map(const FeatureView& fv) {
  std::map<std::string, Value> m;
  m["ego_speed"] = fv.ego_speed;
  m["ego_lane"] = static_cast<double>(fv.ego_lane);
  m["lane_count"] = static_cast<double>(fv.lane_count);
  m["left_exists"] = fv.left_exists;
  m["right_exists"] = fv.right_exists;
  m["lead_gap"] = fv.lead_gap;
  m["follow_gap"] = fv.follow_gap;
  m["left_lead_gap"] = fv.left_lead_gap;
  m["left_follow_gap"] = fv.left_follow_gap;
  m["right_lead_gap"] = fv.right_lead_gap;
  m["right_follow_gap"] = fv.right_follow_gap;
  m["lead_rel_speed"] = fv.lead_rel_speed;
  m["left_lead_rel_speed"] = fv.left_lead_rel_speed;
  m["right_lead_rel_speed"] = fv.right_lead_rel_speed;
  m["ttc_lead"] = fv.ttc_lead;
  return m;
}

inline double as_number(const Value& v) {
  if (const double* d = std::get_if<double>(&v)) return *d;
  throw std::logic_error("naive: expected a number");
}

inline bool as_bool(const Value& v) {
  if (const bool* b = std::get_if<bool>(&v)) return *b;
  throw std::logic_error("naive: expected a boolean");
}

inline Value eval(const dsl::Expr& e, const std::map<std::string, Value>& env) {
  if (const auto* n = std::get_if<dsl::NumberLit>(&e.node)) return n->value;
  if (std::get_if<dsl::InfLit>(&e.node)) return kInf;
  if (const auto* f = std::get_if<dsl::FeatureRef>(&e.node)) {
    auto it = env.find(f->name);
    if (it == env.end()) throw std::logic_error("naive: unknown feature " + f->name);
    return it->second;
  }
  if (const auto* u = std::get_if<dsl::UnaryExpr>(&e.node)) {
    Value a = eval(*u->operand, env);
    if (u->op == dsl::UnaryOp::Neg) return -as_number(a);
    return !as_bool(a);
  }
  if (const auto* b = std::get_if<dsl::BinaryExpr>(&e.node)) {
    Value lhs = eval(*b->lhs, env);
    Value rhs = eval(*b->rhs, env);
    switch (b->op) {
      case dsl::BinaryOp::And: return as_bool(lhs) && as_bool(rhs);
      case dsl::BinaryOp::Or: return as_bool(lhs) || as_bool(rhs);
      case dsl::BinaryOp::Add: return as_number(lhs) + as_number(rhs);
      case dsl::BinaryOp::Sub: return as_number(lhs) - as_number(rhs);
      case dsl::BinaryOp::Mul: return as_number(lhs) * as_number(rhs);
      case dsl::BinaryOp::Div: {
        double num = as_number(lhs);
        double den = as_number(rhs);
        if (den == 0.0) return num >= 0.0 ? kInf : -kInf;
        return num / den;
      }
      case dsl::BinaryOp::Lt: return as_number(lhs) < as_number(rhs);
      case dsl::BinaryOp::Le: return as_number(lhs) <= as_number(rhs);
      case dsl::BinaryOp::Gt: return as_number(lhs) > as_number(rhs);
      case dsl::BinaryOp::Ge: return as_number(lhs) >= as_number(rhs);
      case dsl::BinaryOp::Eq: return as_number(lhs) == as_number(rhs);
      case dsl::BinaryOp::Ne: return as_number(lhs) != as_number(rhs);
    }
    throw std::logic_error("naive: bad op");
  }
  const auto& c = std::get<dsl::CallExpr>(e.node);
  double a = as_number(eval(*c.args[0], env));
  if (c.callee == dsl::Callee::Abs) return a < 0.0 ? -a : a;
  double b = as_number(eval(*c.args[1], env));
  if (c.callee == dsl::Callee::Min) return a < b ? a : b;
  return a > b ? a : b;
}

inline treelane::Action run_node(const dsl::Node& n, const std::map<std::string, Value>& env) {
  if (const auto* leaf = std::get_if<dsl::Leaf>(&n.v)) return leaf->action;
  const auto& d = std::get<dsl::DecisionNode>(n.v);
  for (size_t i = 0; i < d.arms.size(); ++i) {
    if (as_bool(eval(*d.arms[i].condition, env))) return run_node(*d.arms[i].child, env);
  }
  return run_node(*d.else_child, env);
}

inline treelane::Action run(const dsl::PolicyTree& tree, const FeatureView& fv) {
  return run_node(*tree.root, feature_map(fv));
}

// Independent metrics oracle: a second traversal written iteratively with an
// explicit stack, unlike the production recursive fold.
struct OracleMetrics {
  int nodes = 0;
  int branches = 0;
  int depth = 0;
  int leaves = 0;
  int arm_sum = 0;  // sum of arm counts over decision nodes
};

inline OracleMetrics oracle_metrics(const dsl::PolicyTree& tree) {
  OracleMetrics m;
  struct Item {
    const dsl::Node* node;
    int depth;
  };
  std::vector<Item> stack{{tree.root.get(), 1}};
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    ++m.nodes;
    if (it.depth > m.depth) m.depth = it.depth;
    if (const auto* d = std::get_if<dsl::DecisionNode>(&it.node->v)) {
      m.arm_sum += static_cast<int>(d->arms.size());
      m.branches += static_cast<int>(d->arms.size()) + 1;
      stack.push_back({d->else_child.get(), it.depth + 1});
      for (const dsl::Arm& arm : d->arms) stack.push_back({arm.child.get(), it.depth + 1});
    } else {
      ++m.leaves;
    }
  }
  return m;
}

}  // namespace naive
