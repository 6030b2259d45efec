#pragma once

#include <array>
#include <cassert>
#include <string_view>

namespace treelane {

// Sentinel used instead of IEEE infinity so the policy language stays total
// without optional values. "No vehicle there" reads as a gap of kInf metres.
inline constexpr double kInf = 1.0e9;

// Floor applied to the gap when computing time-to-collision, so a touching
// but not yet overlapping lead still yields a small positive TTC.
inline constexpr double kTtcGapFloor = 1.0e-3;

// The scalar inputs a policy can read. Lane 0 is the leftmost lane.
struct FeatureView {
  double ego_speed = 0.0;  // m/s
  int ego_lane = 0;
  int lane_count = 0;
  bool left_exists = false;
  bool right_exists = false;
  double lead_gap = kInf;          // bumper-to-bumper, metres
  double follow_gap = kInf;        // to the nearest vehicle behind, same lane
  double left_lead_gap = kInf;
  double left_follow_gap = kInf;
  double right_lead_gap = kInf;
  double right_follow_gap = kInf;
  double lead_rel_speed = 0.0;       // their speed minus ego speed, m/s
  double left_lead_rel_speed = 0.0;
  double right_lead_rel_speed = 0.0;
  double ttc_lead = kInf;  // seconds; kInf when not closing or no lead

  // Indexed access in the fixed feature-table order. Booleans read as 0/1.
  double get(int index) const {
    switch (index) {
      case 0: return ego_speed;
      case 1: return static_cast<double>(ego_lane);
      case 2: return static_cast<double>(lane_count);
      case 3: return left_exists ? 1.0 : 0.0;
      case 4: return right_exists ? 1.0 : 0.0;
      case 5: return lead_gap;
      case 6: return follow_gap;
      case 7: return left_lead_gap;
      case 8: return left_follow_gap;
      case 9: return right_lead_gap;
      case 10: return right_follow_gap;
      case 11: return lead_rel_speed;
      case 12: return left_lead_rel_speed;
      case 13: return right_lead_rel_speed;
      case 14: return ttc_lead;
      default: assert(false && "bad feature index"); return 0.0;
    }
  }
};

enum class FeatureType { Number, Boolean };

// Coarse unit categories, used only for mixed-unit style warnings.
enum class FeatureUnit { Speed, Distance, Time, Index, Flag };

struct FeatureInfo {
  std::string_view name;
  FeatureType type;
  FeatureUnit unit;
  std::string_view doc;
};

inline constexpr std::array<FeatureInfo, 15> kFeatures = {{
    {"ego_speed", FeatureType::Number, FeatureUnit::Speed,
     "current ego speed in m/s (one of 20, 25, 30, 35, 40)"},
    {"ego_lane", FeatureType::Number, FeatureUnit::Index,
     "ego lane index; 0 is the leftmost lane"},
    {"lane_count", FeatureType::Number, FeatureUnit::Index,
     "number of lanes on the road"},
    {"left_exists", FeatureType::Boolean, FeatureUnit::Flag,
     "true when there is a lane to the left of the ego lane"},
    {"right_exists", FeatureType::Boolean, FeatureUnit::Flag,
     "true when there is a lane to the right of the ego lane"},
    {"lead_gap", FeatureType::Number, FeatureUnit::Distance,
     "bumper gap in metres to the nearest observed vehicle ahead in the ego lane; INF when none"},
    {"follow_gap", FeatureType::Number, FeatureUnit::Distance,
     "bumper gap in metres to the nearest observed vehicle behind in the ego lane; INF when none"},
    {"left_lead_gap", FeatureType::Number, FeatureUnit::Distance,
     "bumper gap ahead in the left lane; INF when none or no left lane"},
    {"left_follow_gap", FeatureType::Number, FeatureUnit::Distance,
     "bumper gap behind in the left lane; INF when none or no left lane"},
    {"right_lead_gap", FeatureType::Number, FeatureUnit::Distance,
     "bumper gap ahead in the right lane; INF when none or no right lane"},
    {"right_follow_gap", FeatureType::Number, FeatureUnit::Distance,
     "bumper gap behind in the right lane; INF when none or no right lane"},
    {"lead_rel_speed", FeatureType::Number, FeatureUnit::Speed,
     "lead vehicle speed minus ego speed in m/s; 0 when no lead (negative means closing)"},
    {"left_lead_rel_speed", FeatureType::Number, FeatureUnit::Speed,
     "left-lane lead speed minus ego speed; 0 when absent"},
    {"right_lead_rel_speed", FeatureType::Number, FeatureUnit::Speed,
     "right-lane lead speed minus ego speed; 0 when absent"},
    {"ttc_lead", FeatureType::Number, FeatureUnit::Time,
     "seconds until the lead gap closes at current speeds; INF when not closing"},
}};

inline constexpr int kFeatureCount = static_cast<int>(kFeatures.size());

// Index of `name` in kFeatures, or -1 when unknown.
inline constexpr int feature_index(std::string_view name) {
  for (int i = 0; i < kFeatureCount; ++i) {
    if (kFeatures[static_cast<size_t>(i)].name == name) return i;
  }
  return -1;
}

}  // namespace treelane
