#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace treelane {

// The discrete action vocabulary of the ego vehicle.
enum class Action : int {
  Idle = 0,
  Slower = 1,
  Faster = 2,
  LaneLeft = 3,
  LaneRight = 4,
};

inline constexpr std::array<Action, 5> kAllActions = {
    Action::Idle, Action::Slower, Action::Faster, Action::LaneLeft, Action::LaneRight};

inline constexpr std::string_view action_token(Action a) {
  switch (a) {
    case Action::Idle: return "IDLE";
    case Action::Slower: return "SLOWER";
    case Action::Faster: return "FASTER";
    case Action::LaneLeft: return "LANE_LEFT";
    case Action::LaneRight: return "LANE_RIGHT";
  }
  return "IDLE";
}

inline constexpr std::optional<Action> action_from_token(std::string_view s) {
  for (Action a : kAllActions) {
    if (action_token(a) == s) return a;
  }
  return std::nullopt;
}

}  // namespace treelane
