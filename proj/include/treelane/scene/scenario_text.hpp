#pragma once

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "treelane/action.hpp"
#include "treelane/errors.hpp"
#include "treelane/scene/rules.hpp"
#include "treelane/sim/config.hpp"
#include "treelane/sim/world.hpp"

namespace treelane::scene {

// The default scenario template. A copy ships at templates/scenario.tmpl so
// operators can restyle the text; placeholders are written as {name}.
inline constexpr std::string_view kDefaultScenarioTemplate =
    R"(You are working with a straight multi-lane highway scenario.

Road layout:
- The road has {lane_count} lanes, each {lane_width} m wide. Lane 0 is the leftmost lane.
- Traffic density factor: {density}. Higher values mean more surrounding vehicles per unit lane length.
- One driving decision is made per second. An episode ends after {max_episode_time} s or at the first collision.

Ego vehicle:
- Speed is always one of five levels: {speed_levels} m/s. Speed-change actions shift one level and have no effect at the ends of the range.
- Surrounding traffic cruises between 18 and 28 m/s and never changes lanes.

Available actions (pick exactly one per decision):
{actions_block}

Driving rules:
{rules_block}

Driving target ({target_style}):
{target_description}
)";

namespace detail {

inline std::string short_num(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// {name} substitution. Unknown placeholders are configuration errors so a
// template typo cannot silently drop scenario facts.
inline std::string render_template(std::string_view tmpl,
                                   const std::map<std::string, std::string>& values) {
  std::string out;
  out.reserve(tmpl.size());
  size_t i = 0;
  while (i < tmpl.size()) {
    char c = tmpl[i];
    if (c != '{') {
      out += c;
      ++i;
      continue;
    }
    size_t close = tmpl.find('}', i + 1);
    if (close == std::string_view::npos) {
      throw ConfigError("template", "unterminated placeholder");
    }
    std::string name(tmpl.substr(i + 1, close - i - 1));
    auto it = values.find(name);
    if (it == values.end()) {
      throw ConfigError("template", "unknown placeholder {" + name + "}");
    }
    out += it->second;
    i = close + 1;
  }
  return out;
}

}  // namespace detail

inline std::string load_template_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("template_file", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Deterministic natural-language description of the scenario, the action
// vocabulary, the rules (verbatim) and the driving target. Identical inputs
// produce byte-identical text.
inline std::string render_scenario(const sim::ScenarioConfig& config, const RuleSet& rules,
                                   const DrivingTarget& target,
                                   std::string_view template_text = kDefaultScenarioTemplate) {
  config.validate();
  if (rules.rules.empty()) {
    throw ConfigError("rules", "rule set must not be empty for a training run");
  }

  std::string speed_levels;
  for (size_t i = 0; i < sim::kSpeedLevels.size(); ++i) {
    if (i) speed_levels += ", ";
    speed_levels += detail::short_num(sim::kSpeedLevels[i]);
  }

  std::string actions_block;
  actions_block += "- IDLE: keep the current speed level and lane.\n";
  actions_block += "- SLOWER: shift one speed level down.\n";
  actions_block += "- FASTER: shift one speed level up.\n";
  actions_block += "- LANE_LEFT: move one lane to the left.\n";
  actions_block += "- LANE_RIGHT: move one lane to the right.";

  std::string rules_block;
  for (size_t i = 0; i < rules.rules.size(); ++i) {
    if (i) rules_block += "\n";
    rules_block += std::to_string(i + 1) + ". " + rules.rules[i];
  }

  std::map<std::string, std::string> values{
      {"lane_count", std::to_string(config.lane_count)},
      {"lane_width", detail::short_num(config.lane_width)},
      {"density", detail::short_num(config.density)},
      {"max_episode_time", detail::short_num(config.max_episode_time)},
      {"speed_levels", speed_levels},
      {"actions_block", actions_block},
      {"rules_block", rules_block},
      {"target_style", target.style_name()},
      {"target_description", target.description},
  };
  return detail::render_template(template_text, values);
}

}  // namespace treelane::scene
