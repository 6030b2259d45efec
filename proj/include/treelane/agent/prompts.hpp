#pragma once

#include <optional>
#include <string>
#include <vector>

#include "treelane/agent/chat_client.hpp"
#include "treelane/agent/critique.hpp"
#include "treelane/agent/tactic.hpp"
#include "treelane/features.hpp"
#include "treelane/scene/rules.hpp"

namespace treelane::agent {

// Language reference embedded in the coder prompt. Kept in one place so the
// prompt can never drift from the implemented grammar.
inline std::string dsl_reference() {
  std::string out;
  out += "Policy language reference:\n";
  out += "  policy \"<name>\" { <node> }\n";
  out += "  <node>  is either a single action (IDLE, SLOWER, FASTER, LANE_LEFT, LANE_RIGHT)\n";
  out += "          or: if <cond> { <node> } elif <cond> { <node> } else { <node> }\n";
  out += "          (any number of elif branches; the else branch is mandatory)\n";
  out += "  <cond>  compares numeric expressions: < <= > >= == != ; combine with and, or, not.\n";
  out += "  Numeric expressions: feature names, numbers, INF, + - * /, min(a,b), max(a,b),\n";
  out += "  abs(a), parentheses. '#' starts a comment. Division by zero yields INF, never an\n";
  out += "  error. INF equals 1e9; absent vehicles report gaps of INF.\n";
  out += "Available features:\n";
  for (const FeatureInfo& f : kFeatures) {
    out += "  ";
    out += f.name;
    out += ": ";
    out += f.doc;
    out += "\n";
  }
  return out;
}

inline std::string planner_system_prompt() {
  return
      "You are the planner of a three-role team (planner, coder, summarizer) that builds an "
      "interpretable driving policy for a multi-lane highway. Your job is to propose a set of "
      "driving tactics from the scenario description and the driving target. A later role "
      "translates your tactics into an executable decision tree, so be concrete about "
      "thresholds, gaps and speeds.\n"
      "\n"
      "Reply with one fenced block per tactic, tagged 'tactic', and nothing else inside the "
      "blocks:\n"
      "```tactic\n"
      "name: <unique short name>\n"
      "priority: <integer, lower value = applied first>\n"
      "conditions: <when this tactic applies, one line>\n"
      "execution:\n"
      "- <step 1>\n"
      "- <step 2>\n"
      "```\n"
      "Use 2 to 5 tactics with distinct names. Text outside fenced blocks is ignored.";
}

inline std::string coder_system_prompt() {
  return
      "You are the coder of a three-role team (planner, coder, summarizer). Translate the "
      "planner's driving tactics into one executable decision-tree policy, honouring tactic "
      "priorities (lower priority value first in the tree).\n"
      "\n" +
      dsl_reference() +
      "\n"
      "Reply with exactly one fenced block tagged 'policy' containing only policy source, for "
      "example:\n"
      "```policy\n"
      "policy \"example\" {\n"
      "  if lead_gap < 20 {\n"
      "    SLOWER\n"
      "  } else {\n"
      "    IDLE\n"
      "  }\n"
      "}\n"
      "```\n"
      "Text outside the fenced block is ignored.";
}

inline std::string summarizer_system_prompt() {
  return
      "You are the summarizer of a three-role team (planner, coder, summarizer). A driving "
      "policy collided in simulation. From the collision report, the tactics and the policy "
      "source, decide whether the failure stems from the tactics themselves (planner), from "
      "their translation into the policy tree (coder), or both, and give concrete improvement "
      "advice to the faulted role(s).\n"
      "\n"
      "Reply with these fenced blocks and nothing else inside them:\n"
      "```fault\n"
      "planner | coder | both   (exactly one word)\n"
      "```\n"
      "```advice_planner\n"
      "<advice for the planner; required when fault is planner or both>\n"
      "```\n"
      "```advice_coder\n"
      "<advice for the coder; required when fault is coder or both>\n"
      "```";
}

struct PlanPrior {
  TacticSet previous;
  Critique critique;
};

struct CodePrior {
  std::string previous_source;
  Critique critique;
};

inline std::vector<ChatMessage> planner_messages(const std::string& scenario_text,
                                                 const scene::DrivingTarget& target,
                                                 const std::optional<PlanPrior>& prior) {
  std::vector<ChatMessage> msgs;
  msgs.push_back({"system", planner_system_prompt()});
  std::string user = scenario_text;
  user += "\nDriving target (" + target.style_name() + "): " + target.description + "\n";
  if (prior) {
    user += "\nYour previous tactics (revision " + std::to_string(prior->previous.revision) +
            "):\n" + prior->previous.render();
    if (prior->critique.targets_planner()) {
      user += "\nThe last validation run ended in a collision. Improvement advice for you:\n" +
              prior->critique.advice_planner + "\n";
      user += "\nCollision report:\n" + prior->critique.evidence.narrative;
    } else {
      user += "\nThe last validation run ended in a collision attributed to the coder, not to "
              "your tactics. Re-issue your tactics, refining them only where the report makes "
              "a flaw obvious.\n";
    }
  }
  user += "\nPropose the tactic set now.";
  msgs.push_back({"user", user});
  return msgs;
}

inline std::vector<ChatMessage> coder_messages(const TacticSet& tactics,
                                               const std::string& scenario_text,
                                               const std::optional<CodePrior>& prior) {
  std::vector<ChatMessage> msgs;
  msgs.push_back({"system", coder_system_prompt()});
  std::string user = scenario_text;
  user += "\nDriving tactics to implement (revision " + std::to_string(tactics.revision) +
          "):\n" + tactics.render();
  if (prior) {
    user += "\nYour previous policy source:\n" + prior->previous_source + "\n";
    if (prior->critique.targets_coder()) {
      user += "\nThe last validation run ended in a collision. Improvement advice for you:\n" +
              prior->critique.advice_coder + "\n";
      user += "\nCollision report:\n" + prior->critique.evidence.narrative;
    } else {
      user += "\nThe last validation run ended in a collision attributed to the tactics, which "
              "have been revised above. Re-translate them faithfully.\n";
    }
  }
  user += "\nEmit the policy now.";
  msgs.push_back({"user", user});
  return msgs;
}

inline std::vector<ChatMessage> summarizer_messages(const scene::CollisionReport& report,
                                                    const TacticSet& tactics,
                                                    const std::string& policy_source) {
  std::vector<ChatMessage> msgs;
  msgs.push_back({"system", summarizer_system_prompt()});
  std::string user = report.narrative;
  user += "\nTactics in force (revision " + std::to_string(tactics.revision) + "):\n" +
          tactics.render();
  user += "\nPolicy source under test:\n" + policy_source + "\n";
  user += "\nAttribute the failure and give advice now.";
  msgs.push_back({"user", user});
  return msgs;
}

}  // namespace treelane::agent
