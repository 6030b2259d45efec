#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "treelane/action.hpp"
#include "treelane/errors.hpp"
#include "treelane/sim/trajectory.hpp"

namespace treelane::scene {

// Vehicles farther than this from the ego at every reported step are left
// out of the report to keep prompt size bounded.
inline constexpr double kReportRadius = 60.0;

struct ReportNeighbor {
  int id = 0;
  int lane = 0;
  double x = 0.0;
  double speed = 0.0;
};

struct ReportStep {
  int time = 0;  // decision number (= seconds at 1 Hz)
  int ego_lane = 0;
  double ego_x = 0.0;
  double ego_speed = 0.0;
  Action ego_action = Action::Idle;
  std::vector<ReportNeighbor> neighbors;
};

// Last-T-steps trajectory record plus its natural-language rendering. Every
// number in the narrative is recomputable from the structured steps.
struct CollisionReport {
  std::vector<ReportStep> steps;  // chronological; last step is the collision
  int collided_with = -1;
  std::string narrative;
};

namespace detail {

inline std::string fixed1(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1f", v);
  return buf;
}

}  // namespace detail

// Renders the last min(window, recorded decisions) steps of a collision
// episode. Throws UsageError when the trace did not end in a collision.
inline CollisionReport render_collision_report(const sim::TrajectoryRecorder& trace,
                                               int window) {
  if (!trace.ended_in_collision()) {
    throw UsageError("collision report requested for an episode that did not collide");
  }
  if (window < 1) throw ConfigError("collision_window", "must be >= 1");

  const auto& all = trace.steps();
  size_t take = std::min<size_t>(static_cast<size_t>(window), all.size());
  size_t first = all.size() - take;

  // vehicles within the report radius of the ego at any reported step
  std::set<int> keep;
  for (size_t i = first; i < all.size(); ++i) {
    for (const sim::VehicleRec& v : all[i].others) {
      if (std::fabs(v.pos - all[i].ego.pos) <= kReportRadius) keep.insert(v.id);
    }
  }

  CollisionReport report;
  report.collided_with = trace.collided_with().value_or(-1);
  for (size_t i = first; i < all.size(); ++i) {
    const sim::StepRec& rec = all[i];
    ReportStep step;
    step.time = rec.decision;
    step.ego_lane = rec.ego.lane;
    step.ego_x = rec.ego.pos;
    step.ego_speed = rec.ego.speed;
    step.ego_action = rec.ego_action;
    for (const sim::VehicleRec& v : rec.others) {
      if (keep.count(v.id)) step.neighbors.push_back(ReportNeighbor{v.id, v.lane, v.pos, v.speed});
    }
    report.steps.push_back(std::move(step));
  }

  std::string& text = report.narrative;
  text += "Collision report: the ego vehicle collided with vehicle " +
          std::to_string(report.collided_with) + " at t=" +
          std::to_string(report.steps.back().time) + " s.\n";
  text += "History of the last " + std::to_string(report.steps.size()) +
          " decisions, oldest first. Positions are vehicle-centre distances.\n";
  for (const ReportStep& step : report.steps) {
    text += "t=" + std::to_string(step.time) + " s: ego in lane " +
            std::to_string(step.ego_lane) + " at x=" + detail::fixed1(step.ego_x) +
            " m doing " + detail::fixed1(step.ego_speed) + " m/s, executed " +
            std::string(action_token(step.ego_action)) + ".";
    for (const ReportNeighbor& v : step.neighbors) {
      double delta = v.x - step.ego_x;
      std::string where = delta >= 0.0 ? " ahead" : " behind";
      std::string lane_phrase = v.lane == step.ego_lane
                                    ? "in the same lane"
                                    : "in lane " + std::to_string(v.lane);
      text += " Vehicle " + std::to_string(v.id) + " was " + detail::fixed1(std::fabs(delta)) +
              " m" + where + " " + lane_phrase + " doing " + detail::fixed1(v.speed) + " m/s.";
    }
    if (&step == &report.steps.back()) {
      text += " The collision happened during this decision.";
    }
    text += "\n";
  }
  return report;
}

// Line-delimited structured form: one meta line, then one line per step.
inline void write_report_jsonl(const CollisionReport& report, std::ostream& out) {
  nlohmann::json meta{{"type", "collision_report"},
                      {"collided_with", report.collided_with},
                      {"steps", report.steps.size()}};
  out << meta.dump() << '\n';
  for (const ReportStep& step : report.steps) {
    nlohmann::json neighbors = nlohmann::json::array();
    for (const ReportNeighbor& v : step.neighbors) {
      neighbors.push_back({{"id", v.id}, {"lane", v.lane}, {"x", v.x}, {"speed", v.speed}});
    }
    nlohmann::json line{{"type", "step"},
                        {"time", step.time},
                        {"ego",
                         {{"lane", step.ego_lane},
                          {"x", step.ego_x},
                          {"speed", step.ego_speed},
                          {"action", std::string(action_token(step.ego_action))}}},
                        {"neighbors", neighbors}};
    out << line.dump() << '\n';
  }
}

}  // namespace treelane::scene
