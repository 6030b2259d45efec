#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "treelane/action.hpp"
#include "treelane/errors.hpp"
#include "treelane/sim/config.hpp"
#include "treelane/sim/vehicle.hpp"
#include "treelane/util/rng.hpp"

namespace treelane::sim {

// The five discrete ego speed levels, m/s.
inline constexpr std::array<double, 5> kSpeedLevels = {20.0, 25.0, 30.0, 35.0, 40.0};

inline constexpr double kEgoSpawnSpeed = 25.0;  // level 1
inline constexpr double kMinSpawnFrontGap = 10.0;  // bumper-to-bumper, m

// IDM car-following parameters for surrounding traffic. Desired speeds are
// drawn per vehicle from [18, 28] m/s at spawn.
inline constexpr double kIdmHeadway = 1.5;     // s
inline constexpr double kIdmMaxAccel = 3.0;    // m/s^2
inline constexpr double kIdmComfortDecel = 2.0;  // m/s^2
inline constexpr double kIdmJamDistance = 2.0;   // m
inline constexpr double kIdmDelta = 4.0;
inline constexpr double kHardBrake = 9.0;      // emergency deceleration bound, m/s^2
inline constexpr double kNpcDesiredMin = 18.0;
inline constexpr double kNpcDesiredMax = 28.0;

struct Observation {
  VehicleState ego;
  std::vector<VehicleState> neighbors;  // <= 7, ascending |pos - ego.pos|, ties by id
  double timestamp = 0.0;
};

struct StepResult {
  Observation observation;
  bool collided = false;
  std::optional<int> collided_with;
  double elapsed = 0.0;
  bool done = false;
};

// Deterministic multi-lane highway world. Decisions run at 1 Hz; each step
// integrates substeps_per_decision sub-intervals. Surrounding vehicles follow
// IDM in their spawn lane; the ego holds one of the five speed levels and may
// shift one level or one lane per decision. A World is single-owner; distinct
// Worlds are fully independent.
class World {
 public:
  // Spawns density-controlled traffic around the ego (new_world).
  explicit World(const ScenarioConfig& cfg) : World(cfg, true) {}

  // A world containing only the ego; vehicles are added via add_vehicle.
  static World empty(const ScenarioConfig& cfg) { return World(cfg, false); }

  // Adds one surrounding vehicle. desired_speed <= 0 pins the vehicle to a
  // stop; otherwise it follows IDM toward desired_speed. Returns its id.
  int add_vehicle(int lane, double pos, double speed, double desired_speed) {
    if (lane < 0 || lane >= cfg_.lane_count) throw ConfigError("lane", "out of range");
    if (speed < 0.0) throw ConfigError("speed", "must be >= 0");
    Npc v;
    v.s.id = next_id_++;
    v.s.lane = lane;
    v.s.pos = pos;
    v.s.speed = speed;
    v.desired_speed = desired_speed;
    npcs_.push_back(v);
    return v.s.id;
  }

  const ScenarioConfig& config() const { return cfg_; }
  const VehicleState& ego() const { return ego_; }
  bool done() const { return done_; }
  bool collided() const { return collided_; }
  std::optional<int> collided_with() const { return collided_with_; }
  double elapsed() const { return elapsed_; }
  int decision_count() const { return decisions_; }

  // Snapshot of every vehicle, ego first, then surrounding vehicles in id order.
  std::vector<VehicleState> vehicles() const {
    std::vector<VehicleState> out;
    out.reserve(npcs_.size() + 1);
    out.push_back(ego_);
    for (const Npc& v : npcs_) out.push_back(v.s);
    return out;
  }

  // Up to the 7 nearest surrounding vehicles by absolute longitudinal
  // distance; equal distances break toward the lower id.
  Observation observe() const {
    Observation obs;
    obs.ego = ego_;
    obs.timestamp = elapsed_;
    std::vector<const VehicleState*> sorted;
    sorted.reserve(npcs_.size());
    for (const Npc& v : npcs_) sorted.push_back(&v.s);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [&](const VehicleState* a, const VehicleState* b) {
                       double da = std::fabs(a->pos - ego_.pos);
                       double db = std::fabs(b->pos - ego_.pos);
                       if (da != db) return da < db;
                       return a->id < b->id;
                     });
    size_t n = std::min<size_t>(7, sorted.size());
    obs.neighbors.reserve(n);
    for (size_t i = 0; i < n; ++i) obs.neighbors.push_back(*sorted[i]);
    return obs;
  }

  // Executes one 1 s decision. Speed levels saturate at the bounds; lane
  // changes saturate at the road edges and complete within the interval,
  // with the ego checked against both lanes while in transit.
  StepResult step(Action action) {
    if (done_) throw UsageError("step() called after the episode ended");

    int from_lane = ego_.lane;
    int to_lane = from_lane;
    switch (action) {
      case Action::Idle: break;
      case Action::Slower:
        if (ego_level_ > 0) --ego_level_;
        break;
      case Action::Faster:
        if (ego_level_ + 1 < static_cast<int>(kSpeedLevels.size())) ++ego_level_;
        break;
      case Action::LaneLeft:
        to_lane = std::max(0, from_lane - 1);
        break;
      case Action::LaneRight:
        to_lane = std::min(cfg_.lane_count - 1, from_lane + 1);
        break;
    }
    ego_.speed = kSpeedLevels[static_cast<size_t>(ego_level_)];
    ego_.lane = to_lane;  // logical lane flips at the start of the interval

    const int substeps = cfg_.substeps_per_decision;
    const double dt = 1.0 / static_cast<double>(substeps);
    const double y_from = lane_center(from_lane, cfg_.lane_width);
    const double y_to = lane_center(to_lane, cfg_.lane_width);
    double ego_y = y_from;

    std::vector<double> accel(npcs_.size(), 0.0);
    for (int k = 1; k <= substeps && !collided_; ++k) {
      for (size_t i = 0; i < npcs_.size(); ++i) accel[i] = idm_accel(npcs_[i]);
      for (size_t i = 0; i < npcs_.size(); ++i) {
        Npc& v = npcs_[i];
        v.s.speed = std::max(0.0, v.s.speed + accel[i] * dt);
        v.s.pos += v.s.speed * dt;
      }
      ego_.pos += ego_.speed * dt;
      ego_y = k == substeps
                  ? y_to
                  : y_from + (y_to - y_from) * (static_cast<double>(k) / substeps);
      for (const Npc& v : npcs_) {
        double vy = lane_center(v.s.lane, cfg_.lane_width);
        if (rects_overlap(ego_.pos, ego_y, ego_.length, ego_.width, v.s.pos, vy, v.s.length,
                          v.s.width)) {
          collided_ = true;
          collided_with_ = v.s.id;
          break;
        }
      }
    }

    ++decisions_;
    elapsed_ = static_cast<double>(decisions_);
    done_ = collided_ || elapsed_ >= cfg_.max_episode_time;

    StepResult r;
    r.observation = observe();
    r.collided = collided_;
    r.collided_with = collided_with_;
    r.elapsed = elapsed_;
    r.done = done_;
    return r;
  }

 private:
  struct Npc {
    VehicleState s;
    double desired_speed = 0.0;
  };

  World(const ScenarioConfig& cfg, bool spawn) : cfg_(cfg) {
    cfg_.validate();
    ego_.id = 0;
    ego_.is_ego = true;
    ego_.lane = cfg_.lane_count / 2;
    ego_.pos = 0.0;
    ego_level_ = 1;
    ego_.speed = kSpeedLevels[1];
    static_assert(kSpeedLevels[1] == kEgoSpawnSpeed);
    if (spawn) spawn_traffic();
  }

  // Expected per-lane count is density * road_length / 100, rounded to the
  // nearest integer and saturated at the physical capacity road_length / 30
  // (slot spacing below 30 m could not honour the 10 m spawn gap). Slots are
  // evenly spaced over [-road_length/4, +3*road_length/4) with +/-25% jitter,
  // which keeps every bumper gap >= 10 m at spawn. Slots landing within 15 m
  // of the ego relocate to the front of their lane's chain, preserving the
  // per-lane count.
  void spawn_traffic() {
    util::Rng rng(cfg_.seed);
    const long long by_density = std::llround(cfg_.density * cfg_.road_length / 100.0);
    const long long capacity = static_cast<long long>(std::floor(cfg_.road_length / 30.0));
    const long long n = std::min(by_density, capacity);
    if (n <= 0) return;
    const double spacing = cfg_.road_length / static_cast<double>(n);
    const double start = -cfg_.road_length / 4.0;

    struct Slot {
      double pos;
      double desired;
    };
    for (int lane = 0; lane < cfg_.lane_count; ++lane) {
      std::vector<Slot> placed;
      std::vector<Slot> relocated;
      for (long long i = 0; i < n; ++i) {
        double jitter = rng.uniform(-0.25, 0.25) * spacing;
        double pos = start + (static_cast<double>(i) + 0.5) * spacing + jitter;
        double desired = rng.uniform(kNpcDesiredMin, kNpcDesiredMax);
        bool near_ego = lane == ego_.lane && std::fabs(pos - ego_.pos) < 15.0;
        (near_ego ? relocated : placed).push_back(Slot{pos, desired});
      }
      for (size_t i = 0; i < relocated.size(); ++i) {
        relocated[i].pos =
            start + cfg_.road_length + (static_cast<double>(i) + 0.5) * spacing;
        placed.push_back(relocated[i]);
      }
      for (const Slot& s : placed) add_vehicle(lane, s.pos, s.desired, s.desired);
    }
  }

  const VehicleState* leader_of(int lane, double pos) const {
    const VehicleState* best = nullptr;
    auto consider = [&](const VehicleState& v) {
      if (v.lane != lane || v.pos <= pos) return;
      if (!best || v.pos < best->pos) best = &v;
    };
    consider(ego_);
    for (const Npc& v : npcs_) consider(v.s);
    return best;
  }

  double idm_accel(const Npc& v) const {
    if (v.desired_speed <= 0.0) {
      return v.s.speed > 0.0 ? -kHardBrake : 0.0;
    }
    double speed_ratio = v.s.speed / v.desired_speed;
    double a = kIdmMaxAccel * (1.0 - std::pow(speed_ratio, kIdmDelta));
    if (const VehicleState* lead = leader_of(v.s.lane, v.s.pos)) {
      double gap = lead->pos - v.s.pos - (lead->length + v.s.length) * 0.5;
      gap = std::max(gap, 0.1);
      double closing = v.s.speed - lead->speed;
      double desired_gap =
          kIdmJamDistance +
          std::max(0.0, v.s.speed * kIdmHeadway +
                            v.s.speed * closing /
                                (2.0 * std::sqrt(kIdmMaxAccel * kIdmComfortDecel)));
      double ratio = desired_gap / gap;
      a -= kIdmMaxAccel * ratio * ratio;
    }
    return std::clamp(a, -kHardBrake, kIdmMaxAccel);
  }

  ScenarioConfig cfg_;
  VehicleState ego_;
  int ego_level_ = 1;
  std::vector<Npc> npcs_;
  int next_id_ = 1;
  int decisions_ = 0;
  double elapsed_ = 0.0;
  bool collided_ = false;
  std::optional<int> collided_with_;
  bool done_ = false;
};

}  // namespace treelane::sim
