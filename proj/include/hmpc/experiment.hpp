#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hmpc/chain.hpp"
#include "hmpc/gridworld.hpp"
#include "hmpc/selector.hpp"

namespace hmpc {

/// Bad configuration or input file; the CLI maps it to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoiseConfig {
  double dynamics = 0.2;
  double goal = 0.2;
  Corruption corruption = Corruption::LocalJitter;
  GoalNoiseKind goal_noise_kind = GoalNoiseKind::StateConfusion;
};

struct DemoConfig {
  int count = 5;
  double dwell_prob = 0.0;
  std::optional<std::string> file;  // read demos from here instead of generating
};

struct SweepConfig {
  std::vector<double> dynamics_levels{0.0, 0.1, 0.2, 0.3, 0.4};
  std::vector<double> goal_levels{0.0, 0.1, 0.2, 0.3, 0.4};
  int episodes_per_cell = 200;
  int n_states = 100;  // the sweep runs its own, larger chain
};

/// One JSON document drives every command; CLI flags override single fields.
struct ExperimentConfig {
  std::string environment = "chain";  // "chain" | "gridworld"
  ChainSpec chain;
  std::vector<std::string> grid_map;  // parsed lazily so configs stay text
  int grid_radius = 1;
  BetaSemantics beta_semantics = BetaSemantics::Terminate;
  NoiseConfig noise;
  SelectorConfig selector;
  DemoConfig demos;
  std::optional<std::string> scorer_file;
  SweepConfig sweep;
  std::uint64_t seed = 1234;
  int episodes = 100;  // episodes per row for the gridworld command

  static ExperimentConfig defaults(const std::string& environment = "chain");
  static ExperimentConfig from_json(const nlohmann::json& doc);
  static ExperimentConfig load(const std::string& path);
  nlohmann::json to_json() const;
  void validate() const;

  GridSpec grid_spec() const;
  std::unique_ptr<Environment> build_environment() const;
  ControllerLibrary build_library() const;
  std::vector<Demonstration> build_demos() const;
  /// Noise-free fitted scorer (loaded from scorer_file / demos.file when set,
  /// fitted on generated demos otherwise).
  GoalScorer build_scorer() const;
};

std::vector<std::string> default_grid_map();

struct SweepCell {
  double p_dyn = 0.0;
  double p_goal = 0.0;
  int episodes = 0;
  double mean_activations = 0.0;
  double median_activations = 0.0;
  double stdev = 0.0;
  double success_rate = 0.0;
};

/// Row-major grid over (dynamics level, goal level) with per-cell activation
/// statistics. The CSV form round-trips losslessly.
struct SweepResult {
  std::vector<double> dynamics_levels;
  std::vector<double> goal_levels;
  std::vector<SweepCell> cells;  // dynamics-major

  const SweepCell& at(std::size_t dyn_idx, std::size_t goal_idx) const {
    return cells[dyn_idx * goal_levels.size() + goal_idx];
  }
  std::string to_csv() const;
  static SweepResult parse_csv(const std::string& text);
};

/// Episode e of every sweep cell runs on seed derive_seed(config seed, e) --
/// the same seed in every cell, so cells differ only in their noise levels
/// and any cell can be reproduced in isolation.
SweepResult run_sweep(const ExperimentConfig& cfg, unsigned threads = 0);

SelectionTrace run_plan(const ExperimentConfig& cfg);

struct GridworldSummary {
  int episodes = 0;
  int waypoint_only = 0;
  int local_only = 0;
  int composed = 0;

  std::string table() const;
  nlohmann::json to_json() const;
};

GridworldSummary run_gridworld(const ExperimentConfig& cfg);

/// Text rendering of one episode trace: per planning step, every candidate's
/// predicted terminal and score next to the chosen controller.
std::string format_trace(const SelectionTrace& trace);

// Command entry points behind the CLI; they write the output file and log
// human-readable progress. All return 0; bad input throws ConfigError.
int cmd_plan(const ExperimentConfig& cfg, const std::string& out_path, std::ostream& log);
int cmd_sweep(const ExperimentConfig& cfg, const std::string& out_path, std::ostream& log);
int cmd_demo_gen(const ExperimentConfig& cfg, const std::string& out_path,
                 std::ostream& log);
int cmd_fit_gsm(const std::string& demos_path, const std::string& out_path,
                std::ostream& log);
int cmd_gridworld(const ExperimentConfig& cfg, const std::string& out_path,
                  std::ostream& log);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace hmpc
