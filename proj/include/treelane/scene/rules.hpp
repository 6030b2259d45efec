#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "treelane/errors.hpp"
#include "treelane/util/strings.hpp"

namespace treelane::scene {

// Ordered traffic regulations / driving ethics, rendered verbatim into the
// scenario text. Must be non-empty for training runs.
struct RuleSet {
  std::vector<std::string> rules;

  static RuleSet defaults() {
    return RuleSet{{
        "Never collide with another vehicle; safety outranks every other objective.",
        "Keep a following distance that allows a full stop behind the vehicle ahead.",
        "Only change lanes when the target lane has clear space ahead and behind.",
        "Prefer smooth, infrequent speed changes over abrupt ones.",
        "Stay within the marked lanes at all times; the road has no shoulder.",
    }};
  }

  // One rule per non-empty line.
  static RuleSet from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("rules_file", "cannot open " + path);
    RuleSet rs;
    std::string line;
    while (std::getline(in, line)) {
      auto t = util::trim(line);
      if (!t.empty()) rs.rules.emplace_back(t);
    }
    return rs;
  }
};

enum class DrivingStyle { Conservative, Aggressive, Custom };

struct DrivingTarget {
  DrivingStyle style = DrivingStyle::Conservative;
  std::string description;

  static DrivingTarget conservative() {
    return {DrivingStyle::Conservative,
            "Drive conservatively: keep generous safety margins, favour steady cruising over "
            "overtaking, and slow down early whenever the situation ahead is uncertain."};
  }

  static DrivingTarget aggressive() {
    return {DrivingStyle::Aggressive,
            "Drive assertively: maintain the highest speed that remains collision-free, "
            "overtake slower traffic when a safe gap exists, and avoid getting stuck behind "
            "slow vehicles."};
  }

  static DrivingTarget custom(std::string text) {
    return {DrivingStyle::Custom, std::move(text)};
  }

  std::string style_name() const {
    switch (style) {
      case DrivingStyle::Conservative: return "conservative";
      case DrivingStyle::Aggressive: return "aggressive";
      case DrivingStyle::Custom: return "custom";
    }
    return "custom";
  }

  static DrivingTarget from_style_name(const std::string& name, const std::string& text = "") {
    if (name == "conservative") return conservative();
    if (name == "aggressive") return aggressive();
    if (name == "custom") {
      if (text.empty()) throw ConfigError("target_text", "custom style needs a description");
      return custom(text);
    }
    throw ConfigError("target_style", "unknown style: " + name);
  }
};

}  // namespace treelane::scene
