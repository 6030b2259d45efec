#pragma once

#include <chrono>
#include <concepts>
#include <optional>
#include <utility>
#include <vector>

#include "treelane/action.hpp"
#include "treelane/features.hpp"
#include "treelane/sim/features.hpp"
#include "treelane/sim/trajectory.hpp"
#include "treelane/sim/world.hpp"

namespace treelane::sim {

template <typename P>
concept PolicyFn = requires(P p, const FeatureView& fv) {
  { p(fv) } -> std::convertible_to<Action>;
};

struct EpisodeResult {
  double survival_time = 0.0;  // seconds; equals decision_count at 1 Hz
  int decision_count = 0;
  bool collided = false;
  std::optional<int> collided_with;
  std::vector<double> latency_seconds;  // one sample per decision, policy call only
  TrajectoryRecorder trajectory;
};

// observe -> features -> policy -> step until collision or the time cap.
// Latency samples wrap only the policy invocation, excluding observation,
// feature extraction and stepping.
template <PolicyFn P>
EpisodeResult run_episode(World& world, P&& policy,
                          TrajectoryRecorder recorder = TrajectoryRecorder{}) {
  using clock = std::chrono::steady_clock;
  EpisodeResult result;
  recorder.record_initial(world);
  while (!world.done()) {
    Observation obs = world.observe();
    FeatureView fv = features(obs, world.config().lane_count);
    auto t0 = clock::now();
    Action action = policy(fv);
    auto t1 = clock::now();
    result.latency_seconds.push_back(
        std::chrono::duration_cast<std::chrono::duration<double>>(t1 - t0).count());
    world.step(action);
    recorder.record_step(world, action);
  }
  result.survival_time = world.elapsed();
  result.decision_count = world.decision_count();
  result.collided = world.collided();
  result.collided_with = world.collided_with();
  result.trajectory = std::move(recorder);
  return result;
}

}  // namespace treelane::sim
