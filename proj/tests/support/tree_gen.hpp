#pragma once

// Random policy-tree and feature-view generators for property tests, plus a
// small greedy shrinker that reports a reduced counterexample.

#include <functional>
#include <string>
#include <vector>

#include "treelane/dsl/ast.hpp"
#include "treelane/dsl/validate.hpp"
#include "treelane/features.hpp"
#include "treelane/sim/world.hpp"
#include "treelane/util/rng.hpp"

namespace treegen {

using treelane::Action;
using treelane::FeatureView;
using treelane::kFeatureCount;
using treelane::kFeatures;
using treelane::kInf;
using treelane::util::Rng;
namespace dsl = treelane::dsl;

inline Action random_action(Rng& rng) {
  return treelane::kAllActions[rng.below(treelane::kAllActions.size())];
}

// Literals land on a 0.25 grid so formatting and equality stay unexciting.
inline double random_literal(Rng& rng) {
  return static_cast<double>(rng.uniform_int(-80, 480)) * 0.25;
}

inline int random_numeric_feature(Rng& rng) {
  for (;;) {
    int idx = rng.uniform_int(0, kFeatureCount - 1);
    if (kFeatures[static_cast<size_t>(idx)].type == treelane::FeatureType::Number) return idx;
  }
}

inline int random_bool_feature(Rng& rng) {
  return rng.chance(0.5) ? treelane::feature_index("left_exists")
                         : treelane::feature_index("right_exists");
}

inline dsl::ExprPtr gen_numeric(Rng& rng, int depth);

inline dsl::ExprPtr gen_bool(Rng& rng, int depth) {
  if (depth <= 0 || rng.chance(0.55)) {
    switch (rng.uniform_int(0, 7)) {
      case 0: {
        int idx = random_bool_feature(rng);
        return dsl::make_feature(std::string(kFeatures[static_cast<size_t>(idx)].name));
      }
      default: {
        static const dsl::BinaryOp cmp[] = {dsl::BinaryOp::Lt, dsl::BinaryOp::Le,
                                            dsl::BinaryOp::Gt, dsl::BinaryOp::Ge,
                                            dsl::BinaryOp::Eq, dsl::BinaryOp::Ne};
        dsl::BinaryOp op = cmp[rng.below(6)];
        return dsl::make_binary(op, gen_numeric(rng, depth - 1), gen_numeric(rng, depth - 1));
      }
    }
  }
  switch (rng.uniform_int(0, 2)) {
    case 0:
      return dsl::make_binary(dsl::BinaryOp::And, gen_bool(rng, depth - 1),
                              gen_bool(rng, depth - 1));
    case 1:
      return dsl::make_binary(dsl::BinaryOp::Or, gen_bool(rng, depth - 1),
                              gen_bool(rng, depth - 1));
    default: return dsl::make_unary(dsl::UnaryOp::Not, gen_bool(rng, depth - 1));
  }
}

inline dsl::ExprPtr gen_numeric(Rng& rng, int depth) {
  if (depth <= 0 || rng.chance(0.5)) {
    int pick = rng.uniform_int(0, 9);
    if (pick == 0) return dsl::make_inf();
    if (pick <= 4) return dsl::make_number(random_literal(rng));
    int idx = random_numeric_feature(rng);
    return dsl::make_feature(std::string(kFeatures[static_cast<size_t>(idx)].name));
  }
  switch (rng.uniform_int(0, 6)) {
    case 0:
      return dsl::make_binary(dsl::BinaryOp::Add, gen_numeric(rng, depth - 1),
                              gen_numeric(rng, depth - 1));
    case 1:
      return dsl::make_binary(dsl::BinaryOp::Sub, gen_numeric(rng, depth - 1),
                              gen_numeric(rng, depth - 1));
    case 2:
      return dsl::make_binary(dsl::BinaryOp::Mul, gen_numeric(rng, depth - 1),
                              gen_numeric(rng, depth - 1));
    case 3:
      return dsl::make_binary(dsl::BinaryOp::Div, gen_numeric(rng, depth - 1),
                              gen_numeric(rng, depth - 1));
    case 4: {
      std::vector<dsl::ExprPtr> args;
      args.push_back(gen_numeric(rng, depth - 1));
      args.push_back(gen_numeric(rng, depth - 1));
      return dsl::make_call(rng.chance(0.5) ? dsl::Callee::Min : dsl::Callee::Max,
                            std::move(args));
    }
    case 5: {
      std::vector<dsl::ExprPtr> args;
      args.push_back(gen_numeric(rng, depth - 1));
      return dsl::make_call(dsl::Callee::Abs, std::move(args));
    }
    default: return dsl::make_unary(dsl::UnaryOp::Neg, gen_numeric(rng, depth - 1));
  }
}

inline dsl::NodePtr gen_node(Rng& rng, int depth_budget) {
  if (depth_budget <= 1 || rng.chance(0.4)) return dsl::make_leaf(random_action(rng));
  int arm_count = rng.uniform_int(1, 3);
  std::vector<dsl::Arm> arms;
  arms.reserve(static_cast<size_t>(arm_count));
  for (int i = 0; i < arm_count; ++i) {
    arms.push_back(dsl::Arm{gen_bool(rng, rng.uniform_int(1, 3)),
                            gen_node(rng, depth_budget - 1)});
  }
  return dsl::make_decision(std::move(arms), gen_node(rng, depth_budget - 1));
}

// A well-typed random tree; always satisfies validate().ok.
inline dsl::PolicyTree gen_tree(Rng& rng, int max_depth = 5) {
  dsl::PolicyTree t;
  t.name = "gen_" + std::to_string(rng.below(1u << 16));
  t.root = gen_node(rng, max_depth);
  return t;
}

// Grammar-valid but not necessarily type-valid: exercises shapes like
// parenthesized comparisons of comparisons that only the formatter and
// parser need to agree on.
inline dsl::ExprPtr gen_any_expr(Rng& rng, int depth) {
  if (depth <= 0) {
    return rng.chance(0.5) ? gen_numeric(rng, 0) : gen_bool(rng, 0);
  }
  switch (rng.uniform_int(0, 3)) {
    case 0: return gen_numeric(rng, depth);
    case 1: return gen_bool(rng, depth);
    case 2: {
      static const dsl::BinaryOp ops[] = {
          dsl::BinaryOp::Add, dsl::BinaryOp::Sub, dsl::BinaryOp::Mul, dsl::BinaryOp::Div,
          dsl::BinaryOp::Lt,  dsl::BinaryOp::Le,  dsl::BinaryOp::Gt,  dsl::BinaryOp::Ge,
          dsl::BinaryOp::Eq,  dsl::BinaryOp::Ne,  dsl::BinaryOp::And, dsl::BinaryOp::Or};
      dsl::BinaryOp op = ops[rng.below(12)];
      return dsl::make_binary(op, gen_any_expr(rng, depth - 1), gen_any_expr(rng, depth - 1));
    }
    default:
      return dsl::make_unary(rng.chance(0.5) ? dsl::UnaryOp::Neg : dsl::UnaryOp::Not,
                             gen_any_expr(rng, depth - 1));
  }
}

inline dsl::NodePtr gen_any_node(Rng& rng, int depth_budget) {
  if (depth_budget <= 1 || rng.chance(0.4)) return dsl::make_leaf(random_action(rng));
  int arm_count = rng.uniform_int(1, 3);
  std::vector<dsl::Arm> arms;
  for (int i = 0; i < arm_count; ++i) {
    arms.push_back(
        dsl::Arm{gen_any_expr(rng, rng.uniform_int(1, 3)), gen_any_node(rng, depth_budget - 1)});
  }
  return dsl::make_decision(std::move(arms), gen_any_node(rng, depth_budget - 1));
}

inline dsl::PolicyTree gen_any_tree(Rng& rng, int max_depth = 5) {
  dsl::PolicyTree t;
  t.name = "any_" + std::to_string(rng.below(1u << 16));
  t.root = gen_any_node(rng, max_depth);
  return t;
}

// A random but invariant-respecting feature view. Values snap to a 0.25
// grid; sentinel slots appear with realistic frequency.
inline FeatureView gen_feature_view(Rng& rng) {
  FeatureView fv;
  fv.lane_count = rng.uniform_int(2, 6);
  fv.ego_lane = rng.uniform_int(0, fv.lane_count - 1);
  fv.left_exists = fv.ego_lane > 0;
  fv.right_exists = fv.ego_lane < fv.lane_count - 1;
  fv.ego_speed = treelane::sim::kSpeedLevels[rng.below(5)];
  auto gap = [&](bool lane_ok) {
    if (!lane_ok || rng.chance(0.3)) return kInf;
    return static_cast<double>(rng.uniform_int(0, 800)) * 0.25;
  };
  auto rel = [&](double g) {
    if (g == kInf) return 0.0;
    return static_cast<double>(rng.uniform_int(-88, 40)) * 0.25;
  };
  fv.lead_gap = gap(true);
  fv.follow_gap = gap(true);
  fv.left_lead_gap = gap(fv.left_exists);
  fv.left_follow_gap = gap(fv.left_exists);
  fv.right_lead_gap = gap(fv.right_exists);
  fv.right_follow_gap = gap(fv.right_exists);
  fv.lead_rel_speed = rel(fv.lead_gap);
  fv.left_lead_rel_speed = rel(fv.left_lead_gap);
  fv.right_lead_rel_speed = rel(fv.right_lead_gap);
  if (fv.lead_gap != kInf && fv.lead_rel_speed < 0.0) {
    fv.ttc_lead = std::max(fv.lead_gap, 1e-3) / -fv.lead_rel_speed;
  } else {
    fv.ttc_lead = kInf;
  }
  return fv;
}

// Greedy structural shrinking: while the predicate still fails, try hoisting
// children, dropping arms, and truncating subtrees to leaves.
inline dsl::PolicyTree shrink(dsl::PolicyTree tree,
                              const std::function<bool(const dsl::PolicyTree&)>& fails) {
  auto candidates = [](const dsl::PolicyTree& t) {
    std::vector<dsl::PolicyTree> out;
    const auto* d = std::get_if<dsl::DecisionNode>(&t.root->v);
    if (!d) return out;
    for (const dsl::Arm& arm : d->arms) {
      out.push_back(dsl::PolicyTree{t.name, dsl::clone(*arm.child)});
    }
    out.push_back(dsl::PolicyTree{t.name, dsl::clone(*d->else_child)});
    if (d->arms.size() > 1) {
      for (size_t skip = 0; skip < d->arms.size(); ++skip) {
        dsl::DecisionNode nd;
        for (size_t i = 0; i < d->arms.size(); ++i) {
          if (i == skip) continue;
          nd.arms.push_back(dsl::Arm{dsl::clone(*d->arms[i].condition),
                                     dsl::clone(*d->arms[i].child)});
        }
        nd.else_child = dsl::clone(*d->else_child);
        out.push_back(dsl::PolicyTree{
            t.name, std::make_unique<dsl::Node>(dsl::Node{std::move(nd), {}})});
      }
    }
    return out;
  };

  for (int round = 0; round < 64; ++round) {
    bool reduced = false;
    for (dsl::PolicyTree& c : candidates(tree)) {
      if (fails(c)) {
        tree = std::move(c);
        reduced = true;
        break;
      }
    }
    if (!reduced) break;
  }
  return tree;
}

}  // namespace treegen
