#pragma once

#include <cmath>

#include "treelane/features.hpp"
#include "treelane/sim/world.hpp"

namespace treelane::sim {

// Projects an observation onto the fixed feature namespace the policy
// language reads. Gaps are bumper-to-bumper and never negative (vehicles
// alongside read as gap 0); absent vehicles read as kInf with relative
// speed 0. Only the observed (up to 7) neighbors are considered, so a
// crowded scene can hide a distant same-lane leader — that is the
// observation contract, not a bug.
inline FeatureView features(const Observation& obs, int lane_count) {
  FeatureView fv;
  fv.ego_speed = obs.ego.speed;
  fv.ego_lane = obs.ego.lane;
  fv.lane_count = lane_count;
  fv.left_exists = obs.ego.lane > 0;
  fv.right_exists = obs.ego.lane < lane_count - 1;

  struct Slot {
    double gap = kInf;
    double speed = 0.0;
    bool present = false;
  };
  Slot lead, follow, left_lead, left_follow, right_lead, right_follow;

  for (const VehicleState& v : obs.neighbors) {
    int dlane = v.lane - obs.ego.lane;
    if (dlane < -1 || dlane > 1) continue;
    double dx = v.pos - obs.ego.pos;
    double gap = std::max(0.0, std::fabs(dx) - (v.length + obs.ego.length) * 0.5);
    bool ahead = dx >= 0.0;
    Slot* slot = nullptr;
    if (dlane == 0) slot = ahead ? &lead : &follow;
    else if (dlane == -1) slot = ahead ? &left_lead : &left_follow;
    else slot = ahead ? &right_lead : &right_follow;
    if (!slot->present || gap < slot->gap) {
      slot->present = true;
      slot->gap = gap;
      slot->speed = v.speed;
    }
  }

  fv.lead_gap = lead.gap;
  fv.follow_gap = follow.gap;
  fv.left_lead_gap = left_lead.gap;
  fv.left_follow_gap = left_follow.gap;
  fv.right_lead_gap = right_lead.gap;
  fv.right_follow_gap = right_follow.gap;
  fv.lead_rel_speed = lead.present ? lead.speed - obs.ego.speed : 0.0;
  fv.left_lead_rel_speed = left_lead.present ? left_lead.speed - obs.ego.speed : 0.0;
  fv.right_lead_rel_speed = right_lead.present ? right_lead.speed - obs.ego.speed : 0.0;

  if (lead.present && obs.ego.speed > lead.speed) {
    fv.ttc_lead = std::max(lead.gap, kTtcGapFloor) / (obs.ego.speed - lead.speed);
  } else {
    fv.ttc_lead = kInf;
  }
  return fv;
}

}  // namespace treelane::sim
