#pragma once

#include <cstdint>
#include <string>

#include "treelane/errors.hpp"
#include "treelane/util/kv.hpp"

namespace treelane::sim {

// Scenario parameters. Density scales the number of vehicles per unit lane
// length: the expected per-lane spawn count is density * road_length / 100.
struct ScenarioConfig {
  int lane_count = 4;
  double lane_width = 4.0;       // m
  double density = 1.0;
  double road_length = 1000.0;   // m; extent of the spawn window
  double max_episode_time = 30.0;  // s
  std::uint64_t seed = 0;
  int substeps_per_decision = 10;

  void validate() const {
    if (lane_count < 2) throw ConfigError("lane_count", "must be >= 2");
    if (!(lane_width > 0.0)) throw ConfigError("lane_width", "must be > 0");
    if (!(density > 0.0)) throw ConfigError("density", "must be > 0");
    if (!(road_length > 0.0)) throw ConfigError("road_length", "must be > 0");
    if (!(max_episode_time > 0.0)) throw ConfigError("max_episode_time", "must be > 0");
    if (substeps_per_decision < 1) throw ConfigError("substeps_per_decision", "must be >= 1");
  }

  static ScenarioConfig from_kv(const util::KvFile& kv) {
    ScenarioConfig cfg;
    cfg.lane_count = kv.get_int("lane_count", cfg.lane_count);
    cfg.lane_width = kv.get_double("lane_width", cfg.lane_width);
    cfg.density = kv.get_double("density", cfg.density);
    cfg.road_length = kv.get_double("road_length", cfg.road_length);
    cfg.max_episode_time = kv.get_double("max_episode_time", cfg.max_episode_time);
    cfg.seed = kv.get_u64("seed", cfg.seed);
    cfg.substeps_per_decision = kv.get_int("substeps_per_decision", cfg.substeps_per_decision);
    cfg.validate();
    return cfg;
  }

  static ScenarioConfig from_file(const std::string& path) {
    return from_kv(util::KvFile::load(path));
  }

  std::string to_kv_text() const {
    std::string out;
    out += "lane_count = " + std::to_string(lane_count) + "\n";
    out += "lane_width = " + std::to_string(lane_width) + "\n";
    out += "density = " + std::to_string(density) + "\n";
    out += "road_length = " + std::to_string(road_length) + "\n";
    out += "max_episode_time = " + std::to_string(max_episode_time) + "\n";
    out += "seed = " + std::to_string(seed) + "\n";
    out += "substeps_per_decision = " + std::to_string(substeps_per_decision) + "\n";
    return out;
  }
};

}  // namespace treelane::sim
