#pragma once

#include <charconv>
#include <deque>
#include <optional>
#include <ostream>
#include <vector>

#include "treelane/action.hpp"
#include "treelane/sim/world.hpp"
#include "treelane/util/hash.hpp"

namespace treelane::sim {

struct VehicleRec {
  int id = 0;
  int lane = 0;
  double pos = 0.0;
  double speed = 0.0;
};

// Post-step snapshot of one decision: the 1-based decision number, the
// action the ego executed during it, and every vehicle's state at its end.
struct StepRec {
  int decision = 0;
  Action ego_action = Action::Idle;
  VehicleRec ego;
  std::vector<VehicleRec> others;
};

// Per-decision trajectory log. capacity 0 keeps everything; otherwise the
// recorder keeps the most recent `capacity` decisions (ring behaviour).
class TrajectoryRecorder {
 public:
  explicit TrajectoryRecorder(size_t capacity = 0) : capacity_(capacity) {}

  void record_initial(const World& w) {
    initial_.clear();
    for (const VehicleState& v : w.vehicles()) {
      initial_.push_back(VehicleRec{v.id, v.lane, v.pos, v.speed});
    }
  }

  void record_step(const World& w, Action action) {
    StepRec rec;
    rec.decision = w.decision_count();
    rec.ego_action = action;
    for (const VehicleState& v : w.vehicles()) {
      VehicleRec r{v.id, v.lane, v.pos, v.speed};
      if (v.is_ego) rec.ego = r;
      else rec.others.push_back(r);
    }
    steps_.push_back(std::move(rec));
    if (capacity_ > 0 && steps_.size() > capacity_) steps_.pop_front();
    ended_in_collision_ = w.collided();
    collided_with_ = w.collided_with();
  }

  const std::deque<StepRec>& steps() const { return steps_; }
  const std::vector<VehicleRec>& initial() const { return initial_; }
  bool ended_in_collision() const { return ended_in_collision_; }
  std::optional<int> collided_with() const { return collided_with_; }

  // Line-delimited export, one row per vehicle per decision:
  //   time,id,lane,x,speed,action
  // The action column is filled only on ego rows; time 0 rows are the spawn
  // state. Numbers use shortest round-trip formatting, so identical
  // trajectories export byte-identically.
  void write_csv(std::ostream& out) const {
    auto num = [](double v) {
      char buf[64];
      auto res = std::to_chars(buf, buf + sizeof(buf), v);
      return std::string(buf, res.ptr);
    };
    out << "time,id,lane,x,speed,action\n";
    for (const VehicleRec& v : initial_) {
      out << 0 << ',' << v.id << ',' << v.lane << ',' << num(v.pos) << ',' << num(v.speed)
          << ",\n";
    }
    for (const StepRec& s : steps_) {
      out << s.decision << ',' << s.ego.id << ',' << s.ego.lane << ',' << num(s.ego.pos) << ','
          << num(s.ego.speed) << ',' << action_token(s.ego_action) << '\n';
      for (const VehicleRec& v : s.others) {
        out << s.decision << ',' << v.id << ',' << v.lane << ',' << num(v.pos) << ','
            << num(v.speed) << ",\n";
      }
    }
  }

  std::uint64_t hash() const {
    util::Fnv64 h;
    auto mix_vehicle = [&](const VehicleRec& v) {
      h.update_i64(v.id);
      h.update_i64(v.lane);
      h.update_double(v.pos);
      h.update_double(v.speed);
    };
    for (const VehicleRec& v : initial_) mix_vehicle(v);
    for (const StepRec& s : steps_) {
      h.update_i64(s.decision);
      h.update_i64(static_cast<int>(s.ego_action));
      mix_vehicle(s.ego);
      for (const VehicleRec& v : s.others) mix_vehicle(v);
    }
    return h.digest();
  }

 private:
  size_t capacity_;
  std::vector<VehicleRec> initial_;
  std::deque<StepRec> steps_;
  bool ended_in_collision_ = false;
  std::optional<int> collided_with_;
};

}  // namespace treelane::sim
