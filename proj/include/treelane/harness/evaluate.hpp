#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "treelane/dsl/eval.hpp"
#include "treelane/errors.hpp"
#include "treelane/sim/episode.hpp"
#include "treelane/util/rng.hpp"

namespace treelane::harness {

struct EvalSummary {
  int lane_count = 0;
  double density = 0.0;
  int n_seeds = 0;
  double mean_driving_time = 0.0;  // arithmetic mean of per_seed_times
  std::vector<double> per_seed_times;
  double mean_decision_latency = 0.0;  // seconds per command
  double median_decision_latency = 0.0;
  double p99_decision_latency = 0.0;
  double collision_rate = 0.0;
};

struct SeedRecord {
  std::uint64_t seed = 0;
  double survival_time = 0.0;
  bool collided = false;
  int decisions = 0;
};

struct EvalResult {
  EvalSummary summary;
  std::vector<SeedRecord> records;
  std::vector<double> latency_samples;  // every per-decision sample, all seeds
};

namespace detail {

inline double nearest_rank(std::vector<double> samples, double q) {
  if (samples.empty()) return 0.0;
  std::sort(samples.begin(), samples.end());
  size_t rank = static_cast<size_t>(std::ceil(q * static_cast<double>(samples.size())));
  if (rank < 1) rank = 1;
  if (rank > samples.size()) rank = samples.size();
  return samples[rank - 1];
}

}  // namespace detail

// Aggregates are always derived from the per-seed records, never computed on
// the side, so any emitted record file recomputes to the reported summary.
inline EvalSummary summarize_records(int lane_count, double density,
                                     std::span<const SeedRecord> records,
                                     std::span<const double> latency_samples) {
  EvalSummary s;
  s.lane_count = lane_count;
  s.density = density;
  s.n_seeds = static_cast<int>(records.size());
  int collisions = 0;
  double total = 0.0;
  for (const SeedRecord& r : records) {
    s.per_seed_times.push_back(r.survival_time);
    total += r.survival_time;
    if (r.collided) ++collisions;
  }
  if (!records.empty()) {
    s.mean_driving_time = total / static_cast<double>(records.size());
    s.collision_rate = static_cast<double>(collisions) / static_cast<double>(records.size());
  }
  if (!latency_samples.empty()) {
    double lat_total = 0.0;
    for (double v : latency_samples) lat_total += v;
    s.mean_decision_latency = lat_total / static_cast<double>(latency_samples.size());
    std::vector<double> copy(latency_samples.begin(), latency_samples.end());
    s.median_decision_latency = detail::nearest_rank(copy, 0.5);
    s.p99_decision_latency = detail::nearest_rank(copy, 0.99);
  }
  return s;
}

// One episode per seed, sequentially (latency timing stays uncontended).
// Latency samples wrap evaluate() calls only.
inline EvalResult evaluate_policy(const dsl::PolicyTree& policy,
                                  const sim::ScenarioConfig& scenario,
                                  std::span<const std::uint64_t> seeds) {
  if (seeds.empty()) throw UsageError("evaluate_policy() needs at least one seed");
  EvalResult result;
  for (std::uint64_t seed : seeds) {
    sim::ScenarioConfig cfg = scenario;
    cfg.seed = seed;
    sim::World world(cfg);
    sim::EpisodeResult ep = sim::run_episode(
        world, [&](const FeatureView& fv) { return dsl::evaluate(policy, fv); });
    result.records.push_back(
        SeedRecord{seed, ep.survival_time, ep.collided, ep.decision_count});
    result.latency_samples.insert(result.latency_samples.end(), ep.latency_seconds.begin(),
                                  ep.latency_seconds.end());
  }
  result.summary = summarize_records(scenario.lane_count, scenario.density, result.records,
                                     result.latency_samples);
  return result;
}

// Baseline for sanity checks: a policy that picks a uniformly random action
// each decision, seeded per episode. Returns the mean survival time.
inline double random_policy_mean(const sim::ScenarioConfig& scenario,
                                 std::span<const std::uint64_t> seeds) {
  if (seeds.empty()) throw UsageError("random_policy_mean() needs at least one seed");
  double total = 0.0;
  for (std::uint64_t seed : seeds) {
    sim::ScenarioConfig cfg = scenario;
    cfg.seed = seed;
    sim::World world(cfg);
    util::Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    sim::EpisodeResult ep = sim::run_episode(world, [&](const FeatureView&) {
      return kAllActions[rng.below(kAllActions.size())];
    });
    total += ep.survival_time;
  }
  return total / static_cast<double>(seeds.size());
}

// Line-delimited per-seed records:
//   {"lanes":..,"density":..,"seed":..,"survival_time":..,"collided":..,"decisions":..}
inline void write_records_jsonl(const EvalResult& result, std::ostream& out) {
  for (const SeedRecord& r : result.records) {
    nlohmann::json line{{"lanes", result.summary.lane_count},
                        {"density", result.summary.density},
                        {"seed", r.seed},
                        {"survival_time", r.survival_time},
                        {"collided", r.collided},
                        {"decisions", r.decisions}};
    out << line.dump() << '\n';
  }
}

inline std::vector<SeedRecord> read_records_jsonl(std::istream& in) {
  std::vector<SeedRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    if (j.value("type", "") != "" && j["type"] != "record") continue;
    SeedRecord r;
    r.seed = j.at("seed").get<std::uint64_t>();
    r.survival_time = j.at("survival_time").get<double>();
    r.collided = j.at("collided").get<bool>();
    r.decisions = j.at("decisions").get<int>();
    out.push_back(r);
  }
  return out;
}

inline std::string render_summary(const EvalSummary& s) {
  char buf[256];
  std::string out;
  std::snprintf(buf, sizeof(buf), "scenario: %d lanes, density %.2f, %d seeds\n", s.lane_count,
                s.density, s.n_seeds);
  out += buf;
  std::snprintf(buf, sizeof(buf), "mean driving time: %.2f s\n", s.mean_driving_time);
  out += buf;
  std::snprintf(buf, sizeof(buf), "collision rate: %.2f\n", s.collision_rate);
  out += buf;
  std::snprintf(buf, sizeof(buf),
                "decision latency: median %.3g s/cmd, mean %.3g s/cmd, p99 %.3g s/cmd\n",
                s.median_decision_latency, s.mean_decision_latency, s.p99_decision_latency);
  out += buf;
  return out;
}

}  // namespace treelane::harness
