// treelane command line: policy diagnostics, seeded evaluation, grid and
// tree reports, trajectory replay, and the closed-loop trainer.
//
// Exit codes: 0 success, 1 validation failure, 2 usage error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "treelane/agent/http_client.hpp"
#include "treelane/agent/train.hpp"
#include "treelane/dsl/dot.hpp"
#include "treelane/dsl/format.hpp"
#include "treelane/dsl/metrics.hpp"
#include "treelane/dsl/parser.hpp"
#include "treelane/dsl/validate.hpp"
#include "treelane/harness/grid.hpp"
#include "treelane/harness/run_dir.hpp"
#include "treelane/harness/tree_report.hpp"
#include "treelane/scene/scenario_text.hpp"
#include "treelane/sim/trajectory.hpp"

namespace fs = std::filesystem;
using namespace treelane;

namespace {

constexpr int kOk = 0;
constexpr int kValidationFailure = 1;
constexpr int kUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Parse + validate, printing diagnostics. Returns nullopt on failure.
std::optional<dsl::PolicyTree> load_policy(const std::string& path, bool must_validate) {
  std::string source = read_file(path);
  dsl::PolicyTree tree;
  try {
    tree = dsl::parse(source);
  } catch (const dsl::ParseError& e) {
    std::cerr << path << ":\n" << e.diagnostic() << "\n";
    return std::nullopt;
  }
  if (must_validate) {
    dsl::ValidationReport report = dsl::validate(tree);
    if (!report.issues.empty()) std::cerr << report.to_string();
    if (!report.ok) return std::nullopt;
  }
  return tree;
}

std::vector<std::uint64_t> make_seed_list(int n_seeds, const std::string& seed_list) {
  std::vector<std::uint64_t> seeds;
  if (!seed_list.empty()) {
    for (const std::string& part : util::split(seed_list, ',')) {
      auto p = util::trim(part);
      if (!p.empty()) seeds.push_back(std::stoull(std::string(p)));
    }
  } else {
    for (int i = 0; i < n_seeds; ++i) seeds.push_back(static_cast<std::uint64_t>(i));
  }
  if (seeds.empty()) throw UsageError("empty seed list");
  return seeds;
}

struct ScenarioFlags {
  int lanes = 4;
  double density = 1.0;
  double road_length = 1000.0;
  double max_time = 30.0;
  int substeps = 10;

  void attach(CLI::App* cmd) {
    cmd->add_option("--lanes", lanes, "lane count")->capture_default_str();
    cmd->add_option("--density", density, "traffic density factor")->capture_default_str();
    cmd->add_option("--road-length", road_length, "spawn window length, m")
        ->capture_default_str();
    cmd->add_option("--max-time", max_time, "episode cap, s")->capture_default_str();
    cmd->add_option("--substeps", substeps, "integration substeps per decision")
        ->capture_default_str();
  }

  sim::ScenarioConfig to_config() const {
    sim::ScenarioConfig cfg;
    cfg.lane_count = lanes;
    cfg.density = density;
    cfg.road_length = road_length;
    cfg.max_episode_time = max_time;
    cfg.substeps_per_decision = substeps;
    cfg.validate();
    return cfg;
  }
};

int cmd_parse(const std::string& file) {
  auto tree = load_policy(file, false);
  if (!tree) return kValidationFailure;
  std::cout << dsl::format(*tree);
  return kOk;
}

int cmd_check(const std::string& file) {
  std::string source = read_file(file);
  dsl::PolicyTree tree;
  try {
    tree = dsl::parse(source);
  } catch (const dsl::ParseError& e) {
    std::cout << file << ":\n" << e.diagnostic() << "\n";
    return kValidationFailure;
  }
  dsl::ValidationReport report = dsl::validate(tree);
  if (!report.issues.empty()) std::cout << report.to_string();
  if (!report.ok) return kValidationFailure;
  dsl::TreeMetrics m = dsl::metrics(tree);
  std::cout << file << ": ok (" << m.node_count << " nodes, " << m.branch_count
            << " branches, depth " << m.depth << ")\n";
  return kOk;
}

int cmd_metrics(const std::vector<std::string>& files) {
  std::vector<dsl::PolicyTree> trees;
  std::vector<std::pair<std::string, const dsl::PolicyTree*>> rows;
  trees.reserve(files.size());
  for (const std::string& file : files) {
    auto tree = load_policy(file, false);
    if (!tree) return kValidationFailure;
    trees.push_back(std::move(*tree));
  }
  for (size_t i = 0; i < files.size(); ++i) {
    rows.emplace_back(fs::path(files[i]).stem().string(), &trees[i]);
  }
  std::cout << harness::tree_report(rows);
  return kOk;
}

int cmd_export_dot(const std::string& file, const std::string& out_path) {
  auto tree = load_policy(file, false);
  if (!tree) return kValidationFailure;
  std::string dot = dsl::export_dot(*tree);
  if (out_path.empty()) {
    std::cout << dot;
  } else {
    std::ofstream out(out_path);
    if (!out) throw UsageError("cannot write " + out_path);
    out << dot;
  }
  return kOk;
}

int cmd_eval(const std::string& file, const ScenarioFlags& flags, int n_seeds,
             const std::string& seed_list, const std::string& out_dir) {
  auto tree = load_policy(file, true);
  if (!tree) return kValidationFailure;
  sim::ScenarioConfig cfg = flags.to_config();
  std::vector<std::uint64_t> seeds = make_seed_list(n_seeds, seed_list);
  harness::EvalResult result = harness::evaluate_policy(*tree, cfg, seeds);
  std::cout << harness::render_summary(result.summary);
  fs::path dir = harness::make_run_dir(cfg.to_kv_text() + file, out_dir);
  std::ofstream records(dir / "records.jsonl");
  harness::write_records_jsonl(result, records);
  std::cout << "per-seed records: " << (dir / "records.jsonl").string() << "\n";
  return kOk;
}

int cmd_grid(const std::string& file, const ScenarioFlags& flags, int n_seeds,
             const std::string& seed_list, const std::string& out_dir) {
  auto tree = load_policy(file, true);
  if (!tree) return kValidationFailure;
  sim::ScenarioConfig base = flags.to_config();
  std::vector<std::uint64_t> seeds = make_seed_list(n_seeds, seed_list);
  harness::GridReport report =
      harness::grid_report(*tree, harness::ExperimentGrid::defaults(), base, seeds);
  std::cout << report.table_text;
  fs::path dir = harness::make_run_dir(base.to_kv_text() + file, out_dir);
  std::ofstream jsonl(dir / "grid.jsonl");
  harness::write_grid_jsonl(report, jsonl);
  std::ofstream table(dir / "grid.txt");
  table << report.table_text;
  std::cout << "records: " << (dir / "grid.jsonl").string() << "\n";
  return kOk;
}

int cmd_replay(const std::string& file, const ScenarioFlags& flags, std::uint64_t seed,
               const std::string& out_dir) {
  auto tree = load_policy(file, true);
  if (!tree) return kValidationFailure;
  sim::ScenarioConfig cfg = flags.to_config();
  cfg.seed = seed;
  sim::World world(cfg);
  sim::EpisodeResult ep = sim::run_episode(
      world, [&](const FeatureView& fv) { return dsl::evaluate(*tree, fv); });
  fs::path dir = harness::make_run_dir(cfg.to_kv_text() + file, out_dir);
  std::ofstream csv(dir / "trajectory.csv");
  ep.trajectory.write_csv(csv);
  std::printf("seed %llu: survived %.0f s over %d decisions%s\n",
              static_cast<unsigned long long>(seed), ep.survival_time, ep.decision_count,
              ep.collided ? " (collision)" : "");
  std::cout << "trajectory: " << (dir / "trajectory.csv").string() << "\n";
  std::printf("trajectory hash: %016llx\n",
              static_cast<unsigned long long>(ep.trajectory.hash()));
  return kOk;
}

int cmd_train(const std::string& config_path, const std::string& out_dir) {
  util::KvFile kv = util::KvFile::load(config_path);
  sim::ScenarioConfig scenario = sim::ScenarioConfig::from_kv(kv);
  agent::TrainConfig tc = agent::TrainConfig::from_kv(kv);

  scene::RuleSet rules = kv.has("rules_file") ? scene::RuleSet::from_file(*kv.get("rules_file"))
                                              : scene::RuleSet::defaults();
  scene::DrivingTarget target = scene::DrivingTarget::from_style_name(
      kv.get_or("target_style", "conservative"), kv.get_or("target_text", ""));

  std::unique_ptr<agent::ChatClient> client;
  std::unique_ptr<agent::ChatClient> live_holder;
  std::string mode = kv.get_or("client", "replay");
  if (mode == "replay") {
    auto fixtures = kv.get("fixtures");
    if (!fixtures) throw ConfigError("fixtures", "replay client needs a fixtures directory");
    client = std::make_unique<agent::ReplayChatClient>(*fixtures);
  } else if (mode == "live" || mode == "record") {
    agent::HttpChatClient::Options opts = agent::HttpChatClient::from_env();
    if (auto v = kv.get("llm_url")) opts.base_url = *v;
    if (auto v = kv.get("llm_model")) opts.model = *v;
    if (mode == "record") {
      auto dir = kv.get("record_dir");
      if (!dir) throw ConfigError("record_dir", "record client needs a capture directory");
      live_holder = std::make_unique<agent::HttpChatClient>(opts);
      client = std::make_unique<agent::RecordingChatClient>(*live_holder, *dir);
    } else {
      client = std::make_unique<agent::HttpChatClient>(opts);
    }
  } else {
    throw ConfigError("client", "must be replay, live or record");
  }

  agent::TrainResult result = agent::train(tc, scenario, rules, target, *client);

  fs::path dir = harness::make_run_dir(scenario.to_kv_text() + config_path, out_dir);
  {
    std::ofstream transcript(dir / "transcript.jsonl");
    result.transcript.write_jsonl(transcript);
  }
  for (const agent::IterationSummary& it : result.iterations) {
    std::printf("iteration %d (revision %d): mean survival %.2f s, %d collision(s), %d nodes\n",
                it.iteration, it.revision, it.mean_survival, it.collisions, it.tree_nodes);
  }
  if (result.aborted) {
    std::cout << "aborted: " << result.abort_reason << "\n";
    std::cout << "transcript: " << (dir / "transcript.jsonl").string() << "\n";
    return kValidationFailure;
  }
  if (result.policy) {
    std::ofstream policy(dir / "policy.dtp");
    policy << dsl::format(*result.policy);
    dsl::TreeMetrics m = dsl::metrics(*result.policy);
    std::printf("%s after %d iteration(s); policy: %d nodes, %d branches, depth %d\n",
                result.converged ? "converged" : "budget spent", result.iterations_used,
                m.node_count, m.branch_count, m.depth);
    std::cout << "policy: " << (dir / "policy.dtp").string() << "\n";
  }
  std::cout << "transcript: " << (dir / "transcript.jsonl").string() << "\n";
  std::printf("transcript hash: %016llx\n",
              static_cast<unsigned long long>(result.transcript.hash()));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decision-tree driving policies: compile, simulate, train"};
  app.require_subcommand(1);

  std::string policy_file, out_path, out_dir, seed_list, config_path;
  std::vector<std::string> policy_files;
  int n_seeds = 20;
  std::uint64_t seed = 0;
  ScenarioFlags flags;

  CLI::App* parse_cmd = app.add_subcommand("parse", "parse a policy and print canonical form");
  parse_cmd->add_option("file", policy_file, "policy file (.dtp)")->required();

  CLI::App* check_cmd = app.add_subcommand("check", "parse and validate a policy");
  check_cmd->add_option("file", policy_file, "policy file (.dtp)")->required();

  CLI::App* metrics_cmd = app.add_subcommand("metrics", "tree statistics table");
  metrics_cmd->add_option("files", policy_files, "policy files")->required();

  CLI::App* dot_cmd = app.add_subcommand("export-dot", "emit a DOT graph of the tree");
  dot_cmd->add_option("file", policy_file, "policy file (.dtp)")->required();
  dot_cmd->add_option("-o,--out", out_path, "output file (stdout when omitted)");

  CLI::App* eval_cmd = app.add_subcommand("eval", "run seeded episodes and summarize");
  eval_cmd->add_option("file", policy_file, "policy file (.dtp)")->required();
  flags.attach(eval_cmd);
  eval_cmd->add_option("--seeds", n_seeds, "number of seeds (0..n-1)")->capture_default_str();
  eval_cmd->add_option("--seed-list", seed_list, "explicit comma-separated seeds");
  eval_cmd->add_option("--out", out_dir, "output directory (default runs/<stamp>-<hash>)");

  CLI::App* grid_cmd = app.add_subcommand("grid", "evaluate across the difficulty grid");
  grid_cmd->add_option("file", policy_file, "policy file (.dtp)")->required();
  flags.attach(grid_cmd);
  grid_cmd->add_option("--seeds", n_seeds, "number of seeds (0..n-1)")->capture_default_str();
  grid_cmd->add_option("--seed-list", seed_list, "explicit comma-separated seeds");
  grid_cmd->add_option("--out", out_dir, "output directory");

  CLI::App* replay_cmd = app.add_subcommand("replay", "re-run one seed and dump the trajectory");
  replay_cmd->add_option("file", policy_file, "policy file (.dtp)")->required();
  replay_cmd->add_option("--seed", seed, "scenario seed")->required();
  flags.attach(replay_cmd);
  replay_cmd->add_option("--out", out_dir, "output directory");

  CLI::App* train_cmd = app.add_subcommand("train", "run the closed training loop");
  train_cmd->add_option("-c,--config", config_path, "train config file")->required();
  train_cmd->add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (parse_cmd->parsed()) return cmd_parse(policy_file);
    if (check_cmd->parsed()) return cmd_check(policy_file);
    if (metrics_cmd->parsed()) return cmd_metrics(policy_files);
    if (dot_cmd->parsed()) return cmd_export_dot(policy_file, out_path);
    if (eval_cmd->parsed()) return cmd_eval(policy_file, flags, n_seeds, seed_list, out_dir);
    if (grid_cmd->parsed()) return cmd_grid(policy_file, flags, n_seeds, seed_list, out_dir);
    if (replay_cmd->parsed()) return cmd_replay(policy_file, flags, seed, out_dir);
    if (train_cmd->parsed()) return cmd_train(config_path, out_dir);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidationFailure;
  }
  return kUsage;
}
