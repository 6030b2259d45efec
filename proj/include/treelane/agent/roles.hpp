#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "treelane/agent/blocks.hpp"
#include "treelane/agent/chat_client.hpp"
#include "treelane/agent/critique.hpp"
#include "treelane/agent/prompts.hpp"
#include "treelane/agent/tactic.hpp"
#include "treelane/agent/transcript.hpp"
#include "treelane/dsl/parse_error.hpp"
#include "treelane/dsl/parser.hpp"
#include "treelane/dsl/validate.hpp"

namespace treelane::agent {

// Shared state for one module invocation inside a training iteration.
// parse_retry_limit is the total attempt budget per invocation.
struct AgentContext {
  ChatClient& client;
  Transcript& transcript;
  int parse_retry_limit = 3;
  int iteration = 1;
};

namespace detail {

inline void log_messages(AgentContext& ctx, const std::string& module,
                         const std::vector<ChatMessage>& messages) {
  for (const ChatMessage& m : messages) {
    ctx.transcript.add(ctx.iteration, module, m.role, m.text);
  }
}

// Runs the send/parse/re-ask loop shared by all three roles. `parse` returns
// an error string on failure. Returns (result, attempts_used).
template <typename T, typename ParseFn>
std::pair<T, int> ask_until_parsed(AgentContext& ctx, const std::string& module,
                                   std::vector<ChatMessage> messages, ParseFn&& parse) {
  if (ctx.parse_retry_limit < 1) {
    throw AgentError(module, "parse_retry_limit must be >= 1");
  }
  log_messages(ctx, module, messages);
  std::string last_error;
  for (int attempt = 1; attempt <= ctx.parse_retry_limit; ++attempt) {
    if (attempt > 1) {
      std::string re_ask =
          "Your previous reply could not be used:\n" + last_error +
          "\nReply again, following the required format exactly.";
      messages.push_back({"user", re_ask});
      ctx.transcript.add(ctx.iteration, module, "user", re_ask);
    }
    std::string reply = ctx.client.send(messages);
    ctx.transcript.add(ctx.iteration, module, "assistant", reply);
    std::string error;
    std::optional<T> parsed = parse(reply, &error);
    if (parsed) return {std::move(*parsed), attempt};
    last_error = error;
    messages.push_back({"assistant", reply});
    ctx.transcript.add(ctx.iteration, module, "event",
                       "reply rejected: " + error);
  }
  throw AgentError(module, "no usable reply after " + std::to_string(ctx.parse_retry_limit) +
                               " attempts; last error: " + last_error);
}

}  // namespace detail

// Planner: proposes a tactic set. Revision numbers increase across loop
// iterations; duplicate tactic names trigger a re-ask.
inline TacticSet plan(AgentContext& ctx, const std::string& scenario_text,
                      const scene::DrivingTarget& target,
                      const std::optional<PlanPrior>& prior) {
  if (scenario_text.empty()) throw UsageError("plan() needs a non-empty scenario text");
  auto parse_reply = [&](const std::string& reply, std::string* error) -> std::optional<TacticSet> {
    std::vector<FencedBlock> blocks = extract_blocks(reply);
    TacticSet set;
    set.driving_target = target;
    std::set<std::string> names;
    for (const FencedBlock* b : blocks_tagged(blocks, "tactic")) {
      std::string err;
      std::optional<Tactic> t = parse_tactic_block(b->body, &err);
      if (!t) {
        *error = err;
        return std::nullopt;
      }
      if (!names.insert(t->name).second) {
        *error = "duplicate tactic name: " + t->name;
        return std::nullopt;
      }
      set.tactics.push_back(std::move(*t));
    }
    if (set.tactics.empty()) {
      *error = "no ```tactic``` blocks found in the reply";
      return std::nullopt;
    }
    return set;
  };

  auto [set, attempts] = detail::ask_until_parsed<TacticSet>(
      ctx, "planner", planner_messages(scenario_text, target, prior), parse_reply);
  (void)attempts;
  set.revision = prior ? prior->previous.revision + 1 : 1;
  return std::move(set);
}

struct PolicyOutput {
  dsl::PolicyTree tree;
  std::string source;   // the policy text as extracted from the reply
  int retry_count = 0;  // re-asks needed (attempts - 1)
};

// Coder: emits policy source, which must parse and validate. Parse errors
// are fed back with their caret diagnostic; validation errors with the
// report text.
inline PolicyOutput code(AgentContext& ctx, const TacticSet& tactics,
                         const std::string& scenario_text,
                         const std::optional<CodePrior>& prior) {
  if (tactics.tactics.empty()) throw UsageError("code() needs a non-empty tactic set");
  auto parse_reply = [](const std::string& reply,
                        std::string* error) -> std::optional<PolicyOutput> {
    std::vector<FencedBlock> blocks = extract_blocks(reply);
    std::optional<std::string> source = first_block_tagged(blocks, "policy");
    if (!source) {
      *error = "no ```policy``` block found in the reply";
      return std::nullopt;
    }
    try {
      dsl::PolicyTree tree = dsl::parse(*source);
      dsl::ValidationReport report = dsl::validate(tree);
      if (!report.ok) {
        *error = "the policy does not validate:\n" + report.to_string();
        return std::nullopt;
      }
      return PolicyOutput{std::move(tree), *source, 0};
    } catch (const dsl::ParseError& e) {
      *error = e.diagnostic();
      return std::nullopt;
    }
  };

  auto [out, attempts] = detail::ask_until_parsed<PolicyOutput>(
      ctx, "coder", coder_messages(tactics, scenario_text, prior), parse_reply);
  out.retry_count = attempts - 1;
  return std::move(out);
}

// Summarizer: attributes a collision to planner/coder/both. The fault tag is
// mandatory; advice for each faulted module must be non-empty.
inline Critique summarize(AgentContext& ctx, const scene::CollisionReport& report,
                          const TacticSet& tactics, const std::string& policy_source) {
  if (report.steps.empty()) throw UsageError("summarize() needs a collision report with steps");
  auto parse_reply = [&](const std::string& reply,
                         std::string* error) -> std::optional<Critique> {
    std::vector<FencedBlock> blocks = extract_blocks(reply);
    std::optional<std::string> fault_body = first_block_tagged(blocks, "fault");
    if (!fault_body) {
      *error = "no ```fault``` block found in the reply";
      return std::nullopt;
    }
    std::optional<Fault> fault = fault_from_name(util::trim(*fault_body));
    if (!fault) {
      *error = "the fault block must contain exactly one of: planner, coder, both";
      return std::nullopt;
    }
    Critique c;
    c.fault = *fault;
    c.advice_planner =
        std::string(util::trim(first_block_tagged(blocks, "advice_planner").value_or("")));
    c.advice_coder =
        std::string(util::trim(first_block_tagged(blocks, "advice_coder").value_or("")));
    if (c.targets_planner() && c.advice_planner.empty()) {
      *error = "fault includes the planner but the advice_planner block is missing or empty";
      return std::nullopt;
    }
    if (c.targets_coder() && c.advice_coder.empty()) {
      *error = "fault includes the coder but the advice_coder block is missing or empty";
      return std::nullopt;
    }
    return c;
  };

  auto [critique, attempts] = detail::ask_until_parsed<Critique>(
      ctx, "summarizer", summarizer_messages(report, tactics, policy_source), parse_reply);
  (void)attempts;
  critique.evidence = report;
  return std::move(critique);
}

}  // namespace treelane::agent
