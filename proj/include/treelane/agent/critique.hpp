#pragma once

#include <optional>
#include <string>

#include "treelane/scene/collision_report.hpp"

namespace treelane::agent {

enum class Fault { Planner, Coder, Both };

inline std::string_view fault_name(Fault f) {
  switch (f) {
    case Fault::Planner: return "planner";
    case Fault::Coder: return "coder";
    case Fault::Both: return "both";
  }
  return "both";
}

inline std::optional<Fault> fault_from_name(std::string_view s) {
  if (s == "planner") return Fault::Planner;
  if (s == "coder") return Fault::Coder;
  if (s == "both") return Fault::Both;
  return std::nullopt;
}

// Failure diagnosis: which module the collision is attributed to, with
// improvement advice for the faulted side(s). Advice for a faulted module
// is always non-empty.
struct Critique {
  Fault fault = Fault::Both;
  std::string advice_planner;
  std::string advice_coder;
  scene::CollisionReport evidence;

  bool targets_planner() const { return fault == Fault::Planner || fault == Fault::Both; }
  bool targets_coder() const { return fault == Fault::Coder || fault == Fault::Both; }
};

}  // namespace treelane::agent
