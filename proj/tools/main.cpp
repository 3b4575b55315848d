#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hmpc/experiment.hpp"

namespace {

struct CommonFlags {
  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> episodes;
  std::optional<int> max_planning_steps;
  bool replan_every_step = false;
  std::optional<std::string> beta_semantics;
  std::string out;
};

void add_common(CLI::App* cmd, CommonFlags& flags, const std::string& default_out) {
  flags.out = default_out;
  cmd->add_option("--config", flags.config_path, "experiment config (JSON)");
  cmd->add_option("--seed", flags.seed, "base seed");
  cmd->add_option("--out", flags.out, "output path");
  cmd->add_option("--episodes", flags.episodes,
                  "episodes per sweep cell / per gridworld row");
  cmd->add_option("--max-planning-steps", flags.max_planning_steps,
                  "planning step limit per episode");
  cmd->add_flag("--replan-every-step", flags.replan_every_step,
                "re-plan after every primitive step");
  cmd->add_option("--beta-semantics", flags.beta_semantics,
                  "terminate|continue: reading of termination probabilities")
      ->check(CLI::IsMember({"terminate", "continue"}));
}

hmpc::ExperimentConfig resolve(const CommonFlags& flags,
                               const std::string& environment) {
  hmpc::ExperimentConfig cfg = flags.config_path
                                   ? hmpc::ExperimentConfig::load(*flags.config_path)
                                   : hmpc::ExperimentConfig::defaults(environment);
  if (flags.seed) cfg.seed = *flags.seed;
  if (flags.episodes) {
    cfg.episodes = *flags.episodes;
    cfg.sweep.episodes_per_cell = *flags.episodes;
  }
  if (flags.max_planning_steps) cfg.selector.max_planning_steps = *flags.max_planning_steps;
  if (flags.replan_every_step) cfg.selector.replan_every_step = true;
  if (flags.beta_semantics)
    cfg.beta_semantics = *flags.beta_semantics == "terminate"
                             ? hmpc::BetaSemantics::Terminate
                             : hmpc::BetaSemantics::Continue;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"controller composition via goal-scored lookahead"};
  app.require_subcommand(1);

  CommonFlags plan_flags, sweep_flags, demo_flags, fit_flags, grid_flags;
  std::string demos_path = "demos.jsonl";

  auto* plan = app.add_subcommand("plan", "run one planning episode, write the trace");
  add_common(plan, plan_flags, "trace.json");

  auto* sweep = app.add_subcommand("sweep", "noise grid over dynamics/goal noise");
  add_common(sweep, sweep_flags, "sweep.csv");

  auto* demo_gen = app.add_subcommand("demo-gen", "generate demonstrations");
  add_common(demo_gen, demo_flags, "demos.jsonl");

  auto* fit = app.add_subcommand("fit-gsm", "fit the goal scorer from demonstrations");
  add_common(fit, fit_flags, "gsm.json");
  fit->add_option("--demos", demos_path, "demonstrations file (JSONL)");

  auto* grid = app.add_subcommand("gridworld",
                                  "composed library vs single-controller ablations");
  add_common(grid, grid_flags, "gridworld.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (plan->parsed())
      return hmpc::cmd_plan(resolve(plan_flags, "chain"), plan_flags.out, std::cout);
    if (sweep->parsed())
      return hmpc::cmd_sweep(resolve(sweep_flags, "chain"), sweep_flags.out, std::cout);
    if (demo_gen->parsed())
      return hmpc::cmd_demo_gen(resolve(demo_flags, "chain"), demo_flags.out,
                                std::cout);
    if (fit->parsed()) return hmpc::cmd_fit_gsm(demos_path, fit_flags.out, std::cout);
    if (grid->parsed())
      return hmpc::cmd_gridworld(resolve(grid_flags, "gridworld"), grid_flags.out,
                                 std::cout);
  } catch (const hmpc::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
