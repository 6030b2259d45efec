#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treelane/agent/roles.hpp"
#include "treelane/dsl/metrics.hpp"
#include "treelane/scene/collision_report.hpp"
#include "treelane/scene/scenario_text.hpp"
#include "treelane/sim/episode.hpp"
#include "treelane/util/kv.hpp"

namespace treelane::agent {

// Budgets and convergence rule for one training run. The run converges when
// every validation episode reaches the episode time cap collision-free.
struct TrainConfig {
  int max_iterations = 10;
  int validation_episodes = 5;
  std::vector<std::uint64_t> validation_seeds;  // defaults to 0..validation_episodes-1
  int parse_retry_limit = 3;  // total attempts per module invocation
  int collision_window = 10;  // T: decisions included in a collision report

  void validate() const {
    if (max_iterations < 1) throw ConfigError("max_iterations", "must be >= 1");
    if (validation_episodes < 1) throw ConfigError("validation_episodes", "must be >= 1");
    if (parse_retry_limit < 1) throw ConfigError("parse_retry_limit", "must be >= 1");
    if (collision_window < 1) throw ConfigError("collision_window", "must be >= 1");
  }

  std::vector<std::uint64_t> seeds() const {
    if (!validation_seeds.empty()) return validation_seeds;
    std::vector<std::uint64_t> out;
    for (int i = 0; i < validation_episodes; ++i) out.push_back(static_cast<std::uint64_t>(i));
    return out;
  }

  static TrainConfig from_kv(const util::KvFile& kv) {
    TrainConfig cfg;
    cfg.max_iterations = kv.get_int("max_iterations", cfg.max_iterations);
    cfg.validation_episodes = kv.get_int("validation_episodes", cfg.validation_episodes);
    cfg.validation_seeds = kv.get_u64_list("validation_seeds");
    cfg.parse_retry_limit = kv.get_int("parse_retry_limit", cfg.parse_retry_limit);
    cfg.collision_window = kv.get_int("collision_window", cfg.collision_window);
    cfg.validate();
    return cfg;
  }
};

struct IterationSummary {
  int iteration = 0;
  int revision = 0;
  double mean_survival = 0.0;
  int collisions = 0;
  int tree_nodes = 0;
  std::vector<double> per_seed_times;
};

struct TrainResult {
  std::optional<dsl::PolicyTree> policy;  // best-so-far when not converged
  std::string policy_source;
  bool converged = false;
  int iterations_used = 0;
  std::vector<IterationSummary> iterations;
  Transcript transcript;
  bool aborted = false;
  std::string abort_reason;
};

// Closed training loop: plan -> code -> validation episodes; on a collision
// the report is summarized and the advice routed to the faulted module(s)
// for the next iteration. Stops at convergence or when the iteration budget
// is spent; on non-convergence the best policy by mean survival time wins,
// ties broken by the smaller node count.
inline TrainResult train(const TrainConfig& config, const sim::ScenarioConfig& scenario,
                         const scene::RuleSet& rules, const scene::DrivingTarget& target,
                         ChatClient& client) {
  config.validate();
  scenario.validate();

  TrainResult result;
  std::string scenario_text = scene::render_scenario(scenario, rules, target);
  result.transcript.add(0, "loop", "event", "scenario text rendered");

  std::optional<PlanPrior> plan_prior;
  std::optional<CodePrior> code_prior;
  double best_mean = -1.0;
  int best_nodes = 0;

  const std::vector<std::uint64_t> seeds = config.seeds();

  try {
    for (int iteration = 1; iteration <= config.max_iterations; ++iteration) {
      AgentContext ctx{client, result.transcript, config.parse_retry_limit, iteration};
      result.iterations_used = iteration;

      TacticSet tactics = plan(ctx, scenario_text, target, plan_prior);
      PolicyOutput policy = code(ctx, tactics, scenario_text, code_prior);

      IterationSummary summary;
      summary.iteration = iteration;
      summary.revision = tactics.revision;
      summary.tree_nodes = dsl::metrics(policy.tree).node_count;

      std::optional<sim::TrajectoryRecorder> first_collision;
      for (std::uint64_t seed : seeds) {
        sim::ScenarioConfig cfg = scenario;
        cfg.seed = seed;
        sim::World world(cfg);
        sim::EpisodeResult ep = sim::run_episode(
            world, [&](const FeatureView& fv) { return dsl::evaluate(policy.tree, fv); });
        summary.per_seed_times.push_back(ep.survival_time);
        if (ep.collided) {
          ++summary.collisions;
          if (!first_collision) first_collision = std::move(ep.trajectory);
        }
      }
      double total = 0.0;
      for (double t : summary.per_seed_times) total += t;
      summary.mean_survival = total / static_cast<double>(summary.per_seed_times.size());
      result.iterations.push_back(summary);
      result.transcript.add(iteration, "loop", "event",
                            "validation: mean survival " +
                                std::to_string(summary.mean_survival) + " s, collisions " +
                                std::to_string(summary.collisions) + "/" +
                                std::to_string(seeds.size()));

      if (summary.mean_survival > best_mean ||
          (summary.mean_survival == best_mean && summary.tree_nodes < best_nodes)) {
        best_mean = summary.mean_survival;
        best_nodes = summary.tree_nodes;
        result.policy = dsl::clone(policy.tree);
        result.policy_source = policy.source;
      }

      if (summary.collisions == 0) {
        result.converged = true;
        result.policy = dsl::clone(policy.tree);
        result.policy_source = policy.source;
        result.transcript.add(iteration, "loop", "event", "converged");
        return result;
      }

      if (iteration == config.max_iterations) break;

      scene::CollisionReport report =
          scene::render_collision_report(*first_collision, config.collision_window);
      Critique critique = summarize(ctx, report, tactics, policy.source);
      result.transcript.add(iteration, "loop", "event",
                            "fault attributed to " + std::string(fault_name(critique.fault)));
      plan_prior = PlanPrior{std::move(tactics), critique};
      code_prior = CodePrior{policy.source, std::move(critique)};
    }
  } catch (const AgentError& e) {
    result.aborted = true;
    result.abort_reason = e.what();
    result.transcript.add(result.iterations_used, "loop", "event",
                          std::string("aborted: ") + e.what());
    return result;
  }

  result.transcript.add(result.iterations_used, "loop", "event",
                        "iteration budget spent without convergence");
  return result;
}

}  // namespace treelane::agent
