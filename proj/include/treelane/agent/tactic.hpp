#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "treelane/agent/blocks.hpp"
#include "treelane/scene/rules.hpp"
#include "treelane/util/strings.hpp"

namespace treelane::agent {

// One named strategy unit produced by the planner. Lower priority values
// take precedence; ties resolve by name.
struct Tactic {
  std::string name;
  std::string usage_conditions;
  int priority = 0;
  std::vector<std::string> execution;
};

struct TacticSet {
  std::vector<Tactic> tactics;
  scene::DrivingTarget driving_target;
  int revision = 0;

  // Prompt rendering, tactics in precedence order.
  std::string render() const {
    std::vector<const Tactic*> ordered;
    for (const Tactic& t : tactics) ordered.push_back(&t);
    std::sort(ordered.begin(), ordered.end(), [](const Tactic* a, const Tactic* b) {
      if (a->priority != b->priority) return a->priority < b->priority;
      return a->name < b->name;
    });
    std::string out;
    for (const Tactic* t : ordered) {
      out += "Tactic: " + t->name + "\n";
      out += "Priority: " + std::to_string(t->priority) + "\n";
      out += "Usage conditions: " + t->usage_conditions + "\n";
      out += "Execution:\n";
      for (const std::string& step : t->execution) out += "- " + step + "\n";
      out += "\n";
    }
    return out;
  }
};

// Parses one ```tactic``` block body. Expected lines:
//   name: <text>
//   priority: <integer>
//   conditions: <text>
//   execution:
//   - <step>
// Unknown keys and prose are ignored; name and priority are mandatory.
inline std::optional<Tactic> parse_tactic_block(const std::string& body, std::string* error) {
  Tactic t;
  bool have_name = false;
  bool have_priority = false;
  for (const std::string& raw : util::split_lines(body)) {
    std::string_view line = util::trim(raw);
    if (line.empty()) continue;
    if (line.starts_with("-")) {
      std::string_view step = util::trim(line.substr(1));
      if (!step.empty()) t.execution.emplace_back(step);
      continue;
    }
    size_t colon = line.find(':');
    if (colon == std::string_view::npos) continue;
    std::string key = util::to_lower(util::trim(line.substr(0, colon)));
    std::string_view value = util::trim(line.substr(colon + 1));
    if (key == "name") {
      t.name = std::string(value);
      have_name = !t.name.empty();
    } else if (key == "priority") {
      try {
        t.priority = std::stoi(std::string(value));
        have_priority = true;
      } catch (const std::exception&) {
        if (error) *error = "tactic priority is not an integer: " + std::string(value);
        return std::nullopt;
      }
    } else if (key == "conditions" || key == "usage conditions" || key == "usage_conditions") {
      t.usage_conditions = std::string(value);
    }
  }
  if (!have_name) {
    if (error) *error = "tactic block is missing a name";
    return std::nullopt;
  }
  if (!have_priority) {
    if (error) *error = "tactic '" + t.name + "' is missing an integer priority";
    return std::nullopt;
  }
  return t;
}

}  // namespace treelane::agent
