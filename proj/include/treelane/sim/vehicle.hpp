#pragma once

#include <cmath>

namespace treelane::sim {

inline constexpr double kVehicleLength = 5.0;  // m
inline constexpr double kVehicleWidth = 2.0;   // m

// Strict-overlap margin. Keeps accumulated floating-point drift from turning
// an exact touch (gap 0) into a detected collision.
inline constexpr double kOverlapEps = 1.0e-9;

// Kinematic state of one vehicle. Lane 0 is the leftmost lane; pos is the
// longitudinal centre in metres; speed is nonnegative.
struct VehicleState {
  int id = 0;
  int lane = 0;
  double pos = 0.0;
  double speed = 0.0;
  double length = kVehicleLength;
  double width = kVehicleWidth;
  bool is_ego = false;
};

// Axis-aligned rectangle overlap with explicit lateral centres. True only
// for strictly positive overlap on both axes.
inline bool rects_overlap(double ax, double ay, double alen, double awid,
                          double bx, double by, double blen, double bwid) {
  double dx = std::fabs(ax - bx);
  double dy = std::fabs(ay - by);
  return dx < (alen + blen) * 0.5 - kOverlapEps && dy < (awid + bwid) * 0.5 - kOverlapEps;
}

// Lateral centre of a lane. y grows to the right, measured from the left
// road edge.
inline double lane_center(int lane, double lane_width) {
  return (static_cast<double>(lane) + 0.5) * lane_width;
}

}  // namespace treelane::sim
