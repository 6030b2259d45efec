#pragma once

#include <cstdio>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "treelane/harness/evaluate.hpp"
#include "treelane/harness/table.hpp"

namespace treelane::harness {

struct GridRow {
  int lane_count = 4;
  double density = 1.0;
  std::string label;
};

// Scenario difficulty ladder for grid reports.
struct ExperimentGrid {
  std::vector<GridRow> rows;

  static ExperimentGrid defaults() {
    return ExperimentGrid{{
        {4, 2.00, "Normal"},
        {5, 2.50, "Hard"},
        {6, 3.00, "Extreme"},
    }};
  }

  void validate() const {
    if (rows.empty()) throw ConfigError("grid", "must have at least one row");
    std::set<std::string> labels;
    for (const GridRow& row : rows) {
      if (!labels.insert(row.label).second) {
        throw ConfigError("grid", "duplicate label: " + row.label);
      }
    }
  }
};

struct GridCell {
  GridRow row;
  EvalResult eval;
};

struct GridReport {
  std::string table_text;
  std::vector<GridCell> cells;
};

// One evaluation per grid row; base supplies everything but lanes/density.
// The emitted table reports the median latency column; means and rates are
// recomputable from the per-seed records.
inline GridReport grid_report(const dsl::PolicyTree& policy, const ExperimentGrid& grid,
                              const sim::ScenarioConfig& base,
                              std::span<const std::uint64_t> seeds) {
  grid.validate();
  GridReport report;
  std::vector<std::vector<std::string>> table;
  table.push_back({"Label", "Lanes", "Density", "Mean driving time (s)",
                   "Median latency (s/cmd)", "Collision rate"});
  for (const GridRow& row : grid.rows) {
    sim::ScenarioConfig cfg = base;
    cfg.lane_count = row.lane_count;
    cfg.density = row.density;
    GridCell cell;
    cell.row = row;
    cell.eval = evaluate_policy(policy, cfg, seeds);
    char buf[64];
    std::vector<std::string> cols;
    cols.push_back(row.label);
    cols.push_back(std::to_string(row.lane_count));
    std::snprintf(buf, sizeof(buf), "%.2f", row.density);
    cols.push_back(buf);
    std::snprintf(buf, sizeof(buf), "%.2f", cell.eval.summary.mean_driving_time);
    cols.push_back(buf);
    std::snprintf(buf, sizeof(buf), "%.3g", cell.eval.summary.median_decision_latency);
    cols.push_back(buf);
    std::snprintf(buf, sizeof(buf), "%.2f", cell.eval.summary.collision_rate);
    cols.push_back(buf);
    table.push_back(std::move(cols));
    report.cells.push_back(std::move(cell));
  }
  report.table_text =
      "# Driving-time grid. Numbers depend on this simulator's traffic model and seed\n"
      "# protocol; they are not comparable with results from other simulators.\n" +
      render_table(table);
  return report;
}

// Every per-seed record of every cell, one JSON object per line.
inline void write_grid_jsonl(const GridReport& report, std::ostream& out) {
  for (const GridCell& cell : report.cells) {
    for (const SeedRecord& r : cell.eval.records) {
      nlohmann::json line{{"label", cell.row.label},
                          {"lanes", cell.row.lane_count},
                          {"density", cell.row.density},
                          {"seed", r.seed},
                          {"survival_time", r.survival_time},
                          {"collided", r.collided},
                          {"decisions", r.decisions}};
      out << line.dump() << '\n';
    }
  }
}

}  // namespace treelane::harness
