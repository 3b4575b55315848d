#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "hmpc/experiment.hpp"

using namespace hmpc;

namespace {

std::string temp_path(const std::string& name) {
  return "cli_test_" + name;
}

ExperimentConfig small_sweep_config() {
  ExperimentConfig cfg = ExperimentConfig::defaults("chain");
  cfg.sweep.dynamics_levels = {0.0, 0.2};
  cfg.sweep.goal_levels = {0.0, 0.2};
  cfg.sweep.episodes_per_cell = 20;
  cfg.sweep.n_states = 30;
  cfg.seed = 99;
  return cfg;
}

}  // namespace

TEST_CASE("config: defaults validate and round-trip through json") {
  for (const char* env : {"chain", "gridworld"}) {
    const auto cfg = ExperimentConfig::defaults(env);
    const auto reparsed = ExperimentConfig::from_json(cfg.to_json());
    CHECK(reparsed.to_json().dump() == cfg.to_json().dump());
  }
}

TEST_CASE("config: bad values are rejected") {
  auto base = ExperimentConfig::defaults("chain").to_json();
  auto bad = base;
  bad["noise"]["dynamics"] = 1.5;
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad), ConfigError);
  bad = base;
  bad["environment"] = "ocean";
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad), ConfigError);
  bad = base;
  bad["selector"]["samples"] = 0;
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad), ConfigError);
  bad = base;
  bad["beta_semantics"] = "sometimes";
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad), ConfigError);
  bad = base;
  bad["typo_key"] = 1;
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad), ConfigError);
  bad = base;
  bad["chain"]["start_state"] = 99;
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad), ConfigError);
}

TEST_CASE("config: loads from a file") {
  const auto path = temp_path("config.json");
  auto doc = ExperimentConfig::defaults("chain").to_json();
  doc["seed"] = 555;
  doc["selector"]["samples"] = 16;
  write_file(path, doc.dump(2));
  const auto cfg = ExperimentConfig::load(path);
  CHECK(cfg.seed == 555);
  CHECK(cfg.selector.samples == 16);
  CHECK_THROWS_AS(ExperimentConfig::load(temp_path("missing.json")), ConfigError);
  write_file(path, "{ not json");
  CHECK_THROWS_AS(ExperimentConfig::load(path), ConfigError);
  std::remove(path.c_str());
}

TEST_CASE("plan: a one-step planning budget fails but still returns a trace") {
  ExperimentConfig cfg = ExperimentConfig::defaults("chain");
  cfg.seed = 7;
  cfg.selector.max_planning_steps = 1;
  const auto trace = run_plan(cfg);
  CHECK_FALSE(trace.success);
  CHECK(trace.activation_count == 1);
  CHECK(trace.diagnostic == "planning step limit reached");
}

TEST_CASE("demo-gen: default config emits 5 plain full-length walks") {
  const auto demos = ExperimentConfig::defaults("chain").build_demos();
  REQUIRE(demos.size() == 5);
  for (const auto& d : demos) CHECK(d.states.size() == 20);
  const auto text = demos_to_jsonl(demos);
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
}

TEST_CASE("config: unreachable grid geometry is a config error") {
  auto doc = ExperimentConfig::defaults("gridworld").to_json();
  doc["gridworld"]["map"] = {"S#W#G"};
  CHECK_THROWS_WITH_AS(ExperimentConfig::from_json(doc),
                       doctest::Contains("path precondition"), ConfigError);
}

TEST_CASE("demo-gen then fit-gsm round-trips through files") {
  ExperimentConfig cfg = ExperimentConfig::defaults("chain");
  cfg.demos.count = 5;
  std::ostringstream log;
  const auto demos_path = temp_path("demos.jsonl");
  const auto scorer_path = temp_path("gsm.json");
  CHECK(cmd_demo_gen(cfg, demos_path, log) == 0);
  CHECK(cmd_fit_gsm(demos_path, scorer_path, log) == 0);
  CHECK(log.str().find("strict decreases 0") != std::string::npos);

  // The plan command can consume the fitted scorer.
  cfg.scorer_file = scorer_path;
  const auto trace = run_plan(cfg);
  CHECK(trace.success);

  std::remove(demos_path.c_str());
  std::remove(scorer_path.c_str());
}

TEST_CASE("fit-gsm: corrupt input reports the line number") {
  const auto path = temp_path("corrupt.jsonl");
  write_file(path, "{\"id\":0,\"states\":[\"1\",\"2\"]}\nnot json at all\n");
  std::ostringstream log;
  CHECK_THROWS_WITH_AS(cmd_fit_gsm(path, temp_path("never.json"), log),
                       doctest::Contains("line 2"), ConfigError);
  std::remove(path.c_str());
}

TEST_CASE("commands rerun byte-identically") {
  std::ostringstream log;

  ExperimentConfig plan_cfg = ExperimentConfig::defaults("chain");
  plan_cfg.seed = 7;
  const auto t1 = temp_path("trace1.json"), t2 = temp_path("trace2.json");
  cmd_plan(plan_cfg, t1, log);
  cmd_plan(plan_cfg, t2, log);
  CHECK(read_file(t1) == read_file(t2));
  CHECK(read_file(t1).find("\"success\": true") != std::string::npos);

  const auto cfg = small_sweep_config();
  const auto s1 = temp_path("sweep1.csv"), s2 = temp_path("sweep2.csv");
  cmd_sweep(cfg, s1, log);
  cmd_sweep(cfg, s2, log);
  CHECK(read_file(s1) == read_file(s2));

  ExperimentConfig grid_cfg = ExperimentConfig::defaults("gridworld");
  grid_cfg.episodes = 10;
  const auto g1 = temp_path("grid1.json"), g2 = temp_path("grid2.json");
  cmd_gridworld(grid_cfg, g1, log);
  cmd_gridworld(grid_cfg, g2, log);
  CHECK(read_file(g1) == read_file(g2));

  for (const auto& p : {t1, t2, s1, s2, g1, g2}) std::remove(p.c_str());
}

TEST_CASE("sweep csv parses back losslessly") {
  const auto result = run_sweep(small_sweep_config());
  const auto csv = result.to_csv();
  const auto parsed = SweepResult::parse_csv(csv);
  REQUIRE(parsed.cells.size() == result.cells.size());
  CHECK(parsed.dynamics_levels == result.dynamics_levels);
  CHECK(parsed.goal_levels == result.goal_levels);
  for (std::size_t i = 0; i < result.cells.size(); ++i) {
    CHECK(parsed.cells[i].mean_activations == result.cells[i].mean_activations);
    CHECK(parsed.cells[i].median_activations == result.cells[i].median_activations);
    CHECK(parsed.cells[i].stdev == result.cells[i].stdev);
    CHECK(parsed.cells[i].success_rate == result.cells[i].success_rate);
    CHECK(parsed.cells[i].episodes == result.cells[i].episodes);
  }
  CHECK(parsed.to_csv() == csv);

  CHECK_THROWS_AS(SweepResult::parse_csv("bogus\n"), ConfigError);
}

TEST_CASE("sweep is deterministic across thread counts") {
  const auto cfg = small_sweep_config();
  const auto serial = run_sweep(cfg, 1);
  const auto parallel = run_sweep(cfg, 4);
  CHECK(serial.to_csv() == parallel.to_csv());
}

TEST_CASE("gridworld summary has the three rows") {
  ExperimentConfig cfg = ExperimentConfig::defaults("gridworld");
  cfg.episodes = 10;
  const auto summary = run_gridworld(cfg);
  CHECK(summary.episodes == 10);
  CHECK(summary.composed == 10);
  CHECK(summary.waypoint_only == 0);
  CHECK(summary.local_only == 0);
  const auto table = summary.table();
  CHECK(table.find("waypoint-only") != std::string::npos);
  CHECK(table.find("local-only") != std::string::npos);
  CHECK(table.find("composed") != std::string::npos);
}

#ifdef HMPC_CLI_BIN
TEST_CASE("the installed binary honors the exit-code contract") {
  const std::string bin = HMPC_CLI_BIN;
  const auto out1 = temp_path("bin_trace1.json");
  const auto out2 = temp_path("bin_trace2.json");
  const std::string base = bin + " plan --seed 11 --out ";
  CHECK(std::system((base + out1 + " > /dev/null").c_str()) == 0);
  CHECK(std::system((base + out2 + " > /dev/null").c_str()) == 0);
  CHECK(read_file(out1) == read_file(out2));

  const int bad = std::system((bin + " plan --config does_not_exist.json"
                                     " > /dev/null 2>&1")
                                  .c_str());
  CHECK(WEXITSTATUS(bad) == 2);
  std::remove(out1.c_str());
  std::remove(out2.c_str());
}
#endif
