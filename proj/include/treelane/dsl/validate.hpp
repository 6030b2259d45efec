#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "treelane/dsl/ast.hpp"
#include "treelane/dsl/eval.hpp"
#include "treelane/dsl/format.hpp"
#include "treelane/features.hpp"

namespace treelane::dsl {

enum class Severity { Error, Warning };

struct Issue {
  Severity severity = Severity::Error;
  SourcePos pos;
  std::string message;
};

struct ValidationReport {
  bool ok = true;  // true iff no error-severity issues
  std::vector<Issue> issues;

  std::string to_string() const {
    std::ostringstream out;
    for (const Issue& i : issues) {
      out << (i.severity == Severity::Error ? "error" : "warning");
      if (i.pos.line > 0) out << " (line " << i.pos.line << ", column " << i.pos.col << ")";
      out << ": " << i.message << "\n";
    }
    return out.str();
  }
};

namespace detail {

enum class ExprType { Number, Boolean, Invalid };

// Unit category lattice for the mixed-unit style warning. Literals are
// Unitless and unify with anything; arithmetic beyond +/-/min/max loses
// unit information.
enum class Unit { Speed, Distance, Time, Index, Flag, Unitless, Unknown };

inline Unit unit_of_feature(FeatureUnit u) {
  switch (u) {
    case FeatureUnit::Speed: return Unit::Speed;
    case FeatureUnit::Distance: return Unit::Distance;
    case FeatureUnit::Time: return Unit::Time;
    case FeatureUnit::Index: return Unit::Index;
    case FeatureUnit::Flag: return Unit::Flag;
  }
  return Unit::Unknown;
}

inline const char* unit_name(Unit u) {
  switch (u) {
    case Unit::Speed: return "a speed (m/s)";
    case Unit::Distance: return "a distance (m)";
    case Unit::Time: return "a time (s)";
    case Unit::Index: return "a lane index/count";
    case Unit::Flag: return "a flag";
    default: return "?";
  }
}

inline Unit merge_same_unit(Unit a, Unit b) {
  if (a == Unit::Unitless) return b;
  if (b == Unit::Unitless) return a;
  if (a == b) return a;
  return Unit::Unknown;
}

// Constant folding over feature-free subexpressions, with the evaluator's
// division semantics. Returns nullopt when the expression reads a feature.
inline std::optional<double> const_eval(const Expr& e) {
  return std::visit(
      [&](const auto& v) -> std::optional<double> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, NumberLit>) {
          return v.value;
        } else if constexpr (std::is_same_v<T, InfLit>) {
          return kInf;
        } else if constexpr (std::is_same_v<T, FeatureRef>) {
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          auto a = const_eval(*v.operand);
          if (!a) return std::nullopt;
          return v.op == UnaryOp::Neg ? -*a : (*a != 0.0 ? 0.0 : 1.0);
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          auto a = const_eval(*v.lhs);
          auto b = const_eval(*v.rhs);
          if (!a || !b) return std::nullopt;
          switch (v.op) {
            case BinaryOp::Add: return *a + *b;
            case BinaryOp::Sub: return *a - *b;
            case BinaryOp::Mul: return *a * *b;
            case BinaryOp::Div: return eval_div(*a, *b);
            case BinaryOp::Lt: return *a < *b ? 1.0 : 0.0;
            case BinaryOp::Le: return *a <= *b ? 1.0 : 0.0;
            case BinaryOp::Gt: return *a > *b ? 1.0 : 0.0;
            case BinaryOp::Ge: return *a >= *b ? 1.0 : 0.0;
            case BinaryOp::Eq: return *a == *b ? 1.0 : 0.0;
            case BinaryOp::Ne: return *a != *b ? 1.0 : 0.0;
            case BinaryOp::And: return (*a != 0.0 && *b != 0.0) ? 1.0 : 0.0;
            case BinaryOp::Or: return (*a != 0.0 || *b != 0.0) ? 1.0 : 0.0;
          }
          return std::nullopt;
        } else {
          static_assert(std::is_same_v<T, CallExpr>);
          std::vector<double> args;
          for (const ExprPtr& a : v.args) {
            auto x = const_eval(*a);
            if (!x) return std::nullopt;
            args.push_back(*x);
          }
          if (v.callee == Callee::Abs) return std::fabs(args[0]);
          return v.callee == Callee::Min ? std::fmin(args[0], args[1])
                                         : std::fmax(args[0], args[1]);
        }
      },
      e.node);
}

class Validator {
 public:
  ValidationReport run(const PolicyTree& tree) {
    if (!tree.root) {
      error({}, "policy has no root node");
    } else {
      check_node(*tree.root);
    }
    report_.ok = true;
    for (const Issue& i : report_.issues) {
      if (i.severity == Severity::Error) {
        report_.ok = false;
        break;
      }
    }
    return std::move(report_);
  }

 private:
  void error(SourcePos pos, std::string msg) {
    report_.issues.push_back(Issue{Severity::Error, pos, std::move(msg)});
  }

  void warning(SourcePos pos, std::string msg) {
    report_.issues.push_back(Issue{Severity::Warning, pos, std::move(msg)});
  }

  void check_node(const Node& n) {
    if (std::holds_alternative<Leaf>(n.v)) return;
    const auto& d = std::get<DecisionNode>(n.v);
    if (d.arms.empty()) error(n.pos, "decision node has no conditional arm");
    if (!d.else_child) error(n.pos, "decision node has no else child");
    for (const Arm& arm : d.arms) {
      if (!arm.condition || !arm.child) {
        error(n.pos, "decision arm is incomplete");
        continue;
      }
      auto [type, unit] = check_expr(*arm.condition);
      if (type == ExprType::Number) {
        error(arm.condition->pos, "arm condition must be boolean, got a numeric expression");
      }
      if (auto c = const_eval(*arm.condition); c && *c == 0.0) {
        warning(arm.condition->pos,
                "condition '" + format_expr(*arm.condition) + "' is always false; arm is unreachable");
      }
      check_node(*arm.child);
    }
    if (d.else_child) check_node(*d.else_child);
  }

  struct TypedUnit {
    ExprType type;
    Unit unit;
  };

  TypedUnit check_expr(const Expr& e) {
    return std::visit(
        [&](const auto& v) -> TypedUnit {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, NumberLit>) {
            return {ExprType::Number, Unit::Unitless};
          } else if constexpr (std::is_same_v<T, InfLit>) {
            return {ExprType::Number, Unit::Unitless};
          } else if constexpr (std::is_same_v<T, FeatureRef>) {
            int idx = feature_index(v.name);
            if (idx < 0) {
              error(e.pos, "unknown feature '" + v.name + "'");
              return {ExprType::Invalid, Unit::Unknown};
            }
            if (v.index != idx) {
              error(e.pos, "feature '" + v.name + "' has a stale resolution index");
              return {ExprType::Invalid, Unit::Unknown};
            }
            const FeatureInfo& info = kFeatures[static_cast<size_t>(idx)];
            ExprType t =
                info.type == FeatureType::Boolean ? ExprType::Boolean : ExprType::Number;
            return {t, unit_of_feature(info.unit)};
          } else if constexpr (std::is_same_v<T, UnaryExpr>) {
            TypedUnit a = check_expr(*v.operand);
            if (v.op == UnaryOp::Neg) {
              require_number(a, v.operand->pos, "operand of unary '-'");
              return {ExprType::Number, a.unit};
            }
            require_boolean(a, v.operand->pos, "operand of 'not'");
            return {ExprType::Boolean, Unit::Flag};
          } else if constexpr (std::is_same_v<T, BinaryExpr>) {
            TypedUnit a = check_expr(*v.lhs);
            TypedUnit b = check_expr(*v.rhs);
            switch (v.op) {
              case BinaryOp::And:
              case BinaryOp::Or:
                require_boolean(a, v.lhs->pos, "left operand of '" +
                                                   std::string(binary_op_token(v.op)) + "'");
                require_boolean(b, v.rhs->pos, "right operand of '" +
                                                   std::string(binary_op_token(v.op)) + "'");
                return {ExprType::Boolean, Unit::Flag};
              case BinaryOp::Lt:
              case BinaryOp::Le:
              case BinaryOp::Gt:
              case BinaryOp::Ge:
              case BinaryOp::Eq:
              case BinaryOp::Ne: {
                require_number(a, v.lhs->pos, "comparison operand");
                require_number(b, v.rhs->pos, "comparison operand");
                if (a.type == ExprType::Number && b.type == ExprType::Number &&
                    a.unit != b.unit && a.unit != Unit::Unitless && b.unit != Unit::Unitless &&
                    a.unit != Unit::Unknown && b.unit != Unit::Unknown) {
                  warning(e.pos, "comparing " + std::string(unit_name(a.unit)) + " with " +
                                     std::string(unit_name(b.unit)));
                }
                return {ExprType::Boolean, Unit::Flag};
              }
              case BinaryOp::Add:
              case BinaryOp::Sub: {
                require_number(a, v.lhs->pos, "arithmetic operand");
                require_number(b, v.rhs->pos, "arithmetic operand");
                return {ExprType::Number, merge_same_unit(a.unit, b.unit)};
              }
              case BinaryOp::Mul:
              case BinaryOp::Div: {
                require_number(a, v.lhs->pos, "arithmetic operand");
                require_number(b, v.rhs->pos, "arithmetic operand");
                return {ExprType::Number, Unit::Unknown};
              }
            }
            return {ExprType::Invalid, Unit::Unknown};
          } else {
            static_assert(std::is_same_v<T, CallExpr>);
            int want = callee_arity(v.callee);
            if (static_cast<int>(v.args.size()) != want) {
              error(e.pos, std::string(callee_token(v.callee)) + " takes " +
                               std::to_string(want) + " argument(s)");
              return {ExprType::Invalid, Unit::Unknown};
            }
            Unit u = Unit::Unitless;
            for (const ExprPtr& arg : v.args) {
              TypedUnit t = check_expr(*arg);
              require_number(t, arg->pos,
                             "argument of " + std::string(callee_token(v.callee)));
              u = merge_same_unit(u, t.unit);
            }
            return {ExprType::Number, u};
          }
        },
        e.node);
  }

  void require_number(const TypedUnit& t, SourcePos pos, const std::string& what) {
    if (t.type == ExprType::Boolean) {
      error(pos, what + " must be numeric, got a boolean expression");
    }
  }

  void require_boolean(const TypedUnit& t, SourcePos pos, const std::string& what) {
    if (t.type == ExprType::Number) {
      error(pos, what + " must be boolean, got a numeric expression");
    }
  }

  ValidationReport report_;
};

}  // namespace detail

// Checks unknown features, type correctness (boolean at arm positions,
// numeric elsewhere), structural completeness, and reports unreachable arms
// and mixed-unit comparisons as warnings. Trees with report.ok are total
// over every FeatureView.
inline ValidationReport validate(const PolicyTree& tree) {
  return detail::Validator{}.run(tree);
}

}  // namespace treelane::dsl
