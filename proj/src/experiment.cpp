#include "hmpc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

namespace hmpc {

namespace {

constexpr std::uint64_t kDemoStream = 0xD0;

void require_keys(const nlohmann::json& doc, const char* section,
                  std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
          return key == k;
        }) == allowed.end())
      throw ConfigError(std::string("config: unknown key '") + key + "' in " + section);
  }
}

double prob_field(const nlohmann::json& doc, const char* key, double fallback) {
  if (!doc.contains(key)) return fallback;
  const double v = doc[key].get<double>();
  if (v < 0.0 || v > 1.0)
    throw ConfigError(std::string("config: ") + key + " outside [0,1]");
  return v;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::vector<std::string> default_grid_map() {
  return {
      "############",
      "#S.........#",
      "#..........#",
      "#..........#",
      "#........W.#",
      "#.........G#",
      "############",
  };
}

ExperimentConfig ExperimentConfig::defaults(const std::string& environment) {
  ExperimentConfig cfg;
  cfg.environment = environment;
  cfg.grid_map = default_grid_map();
  if (environment == "gridworld") {
    cfg.noise.dynamics = 0.0;
    cfg.noise.goal = 0.0;
    cfg.selector.max_planning_steps = 200;
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& doc) {
  require_keys(doc, "top level",
               {"environment", "chain", "gridworld", "beta_semantics", "noise",
                "selector", "demos", "scorer_file", "sweep", "seed", "episodes"});
  ExperimentConfig cfg = defaults(doc.value("environment", std::string("chain")));
  if (cfg.environment != "chain" && cfg.environment != "gridworld")
    throw ConfigError("config: environment must be 'chain' or 'gridworld'");

  if (doc.contains("chain")) {
    const auto& c = doc["chain"];
    require_keys(c, "chain", {"n_states", "start_state"});
    cfg.chain.n_states = c.value("n_states", cfg.chain.n_states);
    cfg.chain.start_state = c.value("start_state", cfg.chain.start_state);
    if (cfg.chain.n_states < 2) throw ConfigError("config: chain.n_states < 2");
    if (cfg.chain.start_state < 1 || cfg.chain.start_state > cfg.chain.n_states)
      throw ConfigError("config: chain.start_state outside 1..n_states");
  }
  if (doc.contains("gridworld")) {
    const auto& gw = doc["gridworld"];
    require_keys(gw, "gridworld", {"map", "radius"});
    if (gw.contains("map")) cfg.grid_map = gw["map"].get<std::vector<std::string>>();
    cfg.grid_radius = gw.value("radius", 1);
    if (cfg.grid_radius < 1) throw ConfigError("config: gridworld.radius < 1");
  }
  if (doc.contains("beta_semantics")) {
    const auto s = doc["beta_semantics"].get<std::string>();
    if (s == "terminate")
      cfg.beta_semantics = BetaSemantics::Terminate;
    else if (s == "continue")
      cfg.beta_semantics = BetaSemantics::Continue;
    else
      throw ConfigError("config: beta_semantics must be 'terminate' or 'continue'");
  }
  if (doc.contains("noise")) {
    const auto& n = doc["noise"];
    require_keys(n, "noise", {"dynamics", "goal", "corruption", "goal_noise_kind"});
    cfg.noise.dynamics = prob_field(n, "dynamics", cfg.noise.dynamics);
    cfg.noise.goal = prob_field(n, "goal", cfg.noise.goal);
    if (n.contains("corruption")) {
      const auto c = n["corruption"].get<std::string>();
      if (c == "local")
        cfg.noise.corruption = Corruption::LocalJitter;
      else if (c == "global")
        cfg.noise.corruption = Corruption::GlobalUniform;
      else
        throw ConfigError("config: corruption must be 'local' or 'global'");
    }
    if (n.contains("goal_noise_kind")) {
      const auto k = n["goal_noise_kind"].get<std::string>();
      if (k == "state")
        cfg.noise.goal_noise_kind = GoalNoiseKind::StateConfusion;
      else if (k == "value")
        cfg.noise.goal_noise_kind = GoalNoiseKind::ValueNoise;
      else
        throw ConfigError("config: goal_noise_kind must be 'state' or 'value'");
    }
  }
  if (doc.contains("selector")) {
    const auto& s = doc["selector"];
    require_keys(s, "selector",
                 {"samples", "max_planning_steps", "activation_cap", "horizon",
                  "replan_every_step"});
    cfg.selector.samples = s.value("samples", cfg.selector.samples);
    cfg.selector.max_planning_steps =
        s.value("max_planning_steps", cfg.selector.max_planning_steps);
    cfg.selector.activation_cap = s.value("activation_cap", cfg.selector.activation_cap);
    cfg.selector.replan_every_step =
        s.value("replan_every_step", cfg.selector.replan_every_step);
    if (s.contains("horizon")) {
      const auto& h = s["horizon"];
      require_keys(h, "selector.horizon", {"mode", "steps", "cap"});
      const auto mode = h.at("mode").get<std::string>();
      if (mode == "fixed")
        cfg.selector.horizon = FixedSteps{h.value("steps", 10)};
      else if (mode == "until_termination")
        cfg.selector.horizon = UntilTermination{h.value("cap", 200)};
      else
        throw ConfigError("config: horizon.mode must be 'fixed' or 'until_termination'");
    }
    if (cfg.selector.samples < 1) throw ConfigError("config: selector.samples < 1");
    if (cfg.selector.max_planning_steps < 1)
      throw ConfigError("config: selector.max_planning_steps < 1");
    if (cfg.selector.activation_cap < 1)
      throw ConfigError("config: selector.activation_cap < 1");
  }
  if (doc.contains("demos")) {
    const auto& d = doc["demos"];
    require_keys(d, "demos", {"count", "dwell_prob", "file"});
    cfg.demos.count = d.value("count", cfg.demos.count);
    cfg.demos.dwell_prob = prob_field(d, "dwell_prob", cfg.demos.dwell_prob);
    if (d.contains("file") && !d["file"].is_null())
      cfg.demos.file = d["file"].get<std::string>();
    if (cfg.demos.count < 1) throw ConfigError("config: demos.count < 1");
    if (cfg.demos.dwell_prob > 0.9)
      throw ConfigError("config: demos.dwell_prob > 0.9");
  }
  if (doc.contains("scorer_file") && !doc["scorer_file"].is_null())
    cfg.scorer_file = doc["scorer_file"].get<std::string>();
  if (doc.contains("sweep")) {
    const auto& s = doc["sweep"];
    require_keys(s, "sweep",
                 {"dynamics_levels", "goal_levels", "episodes_per_cell", "n_states"});
    if (s.contains("dynamics_levels"))
      cfg.sweep.dynamics_levels = s["dynamics_levels"].get<std::vector<double>>();
    if (s.contains("goal_levels"))
      cfg.sweep.goal_levels = s["goal_levels"].get<std::vector<double>>();
    cfg.sweep.episodes_per_cell =
        s.value("episodes_per_cell", cfg.sweep.episodes_per_cell);
    cfg.sweep.n_states = s.value("n_states", cfg.sweep.n_states);
    for (double v : cfg.sweep.dynamics_levels)
      if (v < 0.0 || v > 1.0) throw ConfigError("config: sweep dynamics level outside [0,1]");
    for (double v : cfg.sweep.goal_levels)
      if (v < 0.0 || v > 1.0) throw ConfigError("config: sweep goal level outside [0,1]");
    if (cfg.sweep.dynamics_levels.empty() || cfg.sweep.goal_levels.empty())
      throw ConfigError("config: sweep levels must be non-empty");
    if (cfg.sweep.episodes_per_cell < 1)
      throw ConfigError("config: sweep.episodes_per_cell < 1");
    if (cfg.sweep.n_states < 2) throw ConfigError("config: sweep.n_states < 2");
  }
  if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("episodes")) {
    cfg.episodes = doc["episodes"].get<int>();
    if (cfg.episodes < 1) throw ConfigError("config: episodes < 1");
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
  return from_json(doc);
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json horizon;
  if (const auto* fixed = std::get_if<FixedSteps>(&selector.horizon))
    horizon = {{"mode", "fixed"}, {"steps", fixed->steps}};
  else
    horizon = {{"mode", "until_termination"},
               {"cap", std::get<UntilTermination>(selector.horizon).cap}};
  nlohmann::json demos = {{"count", this->demos.count},
                          {"dwell_prob", this->demos.dwell_prob}};
  if (this->demos.file) demos["file"] = *this->demos.file;
  nlohmann::json doc = {
      {"environment", environment},
      {"chain", {{"n_states", chain.n_states}, {"start_state", chain.start_state}}},
      {"gridworld", {{"map", grid_map}, {"radius", grid_radius}}},
      {"beta_semantics", beta_semantics == BetaSemantics::Terminate ? "terminate" : "continue"},
      {"noise",
       {{"dynamics", noise.dynamics},
        {"goal", noise.goal},
        {"corruption", noise.corruption == Corruption::LocalJitter ? "local" : "global"},
        {"goal_noise_kind",
         noise.goal_noise_kind == GoalNoiseKind::StateConfusion ? "state" : "value"}}},
      {"selector",
       {{"samples", selector.samples},
        {"max_planning_steps", selector.max_planning_steps},
        {"activation_cap", selector.activation_cap},
        {"horizon", horizon},
        {"replan_every_step", selector.replan_every_step}}},
      {"demos", demos},
      {"sweep",
       {{"dynamics_levels", sweep.dynamics_levels},
        {"goal_levels", sweep.goal_levels},
        {"episodes_per_cell", sweep.episodes_per_cell},
        {"n_states", sweep.n_states}}},
      {"seed", seed},
      {"episodes", episodes}};
  if (scorer_file) doc["scorer_file"] = *scorer_file;
  return doc;
}

void ExperimentConfig::validate() const {
  if (environment == "gridworld") grid_spec();  // throws on bad maps
}

GridSpec ExperimentConfig::grid_spec() const {
  GridSpec spec;
  try {
    spec = GridSpec::parse(grid_map, grid_radius);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!grid_path_exists(spec, spec.start, spec.waypoint) ||
      !grid_path_exists(spec, spec.waypoint, spec.goal))
    throw ConfigError("spec violates path precondition");
  return spec;
}

std::unique_ptr<Environment> ExperimentConfig::build_environment() const {
  if (environment == "chain") return std::make_unique<ChainEnv>(chain);
  return std::make_unique<GridEnv>(grid_spec());
}

ControllerLibrary ExperimentConfig::build_library() const {
  if (environment == "chain")
    return benchmark_library(chain, noise.dynamics, beta_semantics, noise.corruption);
  return gridworld_library(grid_spec(), noise.dynamics, beta_semantics,
                           noise.corruption);
}

std::vector<Demonstration> ExperimentConfig::build_demos() const {
  if (demos.file) {
    try {
      return demos_from_jsonl(read_file(*demos.file));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  Rng rng = Rng(seed).derive(kDemoStream);
  if (environment == "chain")
    return generate_chain_demos(chain, demos.count, demos.dwell_prob, rng);
  return generate_grid_demos(grid_spec(), demos.count, demos.dwell_prob, rng);
}

GoalScorer ExperimentConfig::build_scorer() const {
  if (scorer_file) {
    try {
      return GoalScorer::from_json(nlohmann::json::parse(read_file(*scorer_file)));
    } catch (const std::exception& e) {
      throw ConfigError("scorer file " + *scorer_file + ": " + e.what());
    }
  }
  return GoalScorer::fit(build_demos());
}

std::string SweepResult::to_csv() const {
  std::string out =
      "p_dyn,p_goal,episodes,mean_activations,median_activations,stdev,success_rate\n";
  for (const auto& c : cells) {
    out += fmt_double(c.p_dyn) + "," + fmt_double(c.p_goal) + "," +
           std::to_string(c.episodes) + "," + fmt_double(c.mean_activations) + "," +
           fmt_double(c.median_activations) + "," + fmt_double(c.stdev) + "," +
           fmt_double(c.success_rate) + "\n";
  }
  return out;
}

SweepResult SweepResult::parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) ||
      line != "p_dyn,p_goal,episodes,mean_activations,median_activations,stdev,success_rate")
    throw ConfigError("sweep csv: bad header");
  SweepResult result;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields.size() != 7)
      throw ConfigError("sweep csv line " + std::to_string(line_no) + ": want 7 fields");
    SweepCell cell;
    try {
      cell.p_dyn = std::stod(fields[0]);
      cell.p_goal = std::stod(fields[1]);
      cell.episodes = std::stoi(fields[2]);
      cell.mean_activations = std::stod(fields[3]);
      cell.median_activations = std::stod(fields[4]);
      cell.stdev = std::stod(fields[5]);
      cell.success_rate = std::stod(fields[6]);
    } catch (const std::exception&) {
      throw ConfigError("sweep csv line " + std::to_string(line_no) + ": unparsable");
    }
    if (cell.success_rate < 0.0 || cell.success_rate > 1.0)
      throw ConfigError("sweep csv line " + std::to_string(line_no) +
                        ": success_rate outside [0,1]");
    result.cells.push_back(cell);
    if (std::find(result.dynamics_levels.begin(), result.dynamics_levels.end(),
                  cell.p_dyn) == result.dynamics_levels.end())
      result.dynamics_levels.push_back(cell.p_dyn);
    if (std::find(result.goal_levels.begin(), result.goal_levels.end(), cell.p_goal) ==
        result.goal_levels.end())
      result.goal_levels.push_back(cell.p_goal);
  }
  if (result.cells.size() !=
      result.dynamics_levels.size() * result.goal_levels.size())
    throw ConfigError("sweep csv: incomplete grid");
  for (const auto& c : result.cells)
    if (c.episodes != result.cells.front().episodes)
      throw ConfigError("sweep csv: cells aggregate different episode counts");
  return result;
}

namespace {

SweepCell summarize(double p_dyn, double p_goal, const std::vector<int>& activations,
                    int successes) {
  SweepCell cell;
  cell.p_dyn = p_dyn;
  cell.p_goal = p_goal;
  cell.episodes = static_cast<int>(activations.size());
  double mean = 0.0;
  for (int a : activations) mean += a;
  mean /= activations.size();
  double ss = 0.0;
  for (int a : activations) ss += (a - mean) * (a - mean);
  std::vector<int> sorted = activations;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  cell.mean_activations = mean;
  cell.median_activations =
      n % 2 ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
  cell.stdev = n > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  cell.success_rate = static_cast<double>(successes) / n;
  return cell;
}

}  // namespace

SweepResult run_sweep(const ExperimentConfig& cfg, unsigned threads) {
  if (cfg.environment != "chain")
    throw ConfigError("sweep: only the chain environment is supported");
  ChainSpec spec;
  spec.n_states = cfg.sweep.n_states;
  spec.start_state = 1;
  const ChainEnv env(spec);

  // One scorer for the whole grid, fitted on demos for the sweep chain.
  Rng demo_rng = Rng(cfg.seed).derive(kDemoStream);
  const GoalScorer base = GoalScorer::fit(
      generate_chain_demos(spec, cfg.demos.count, cfg.demos.dwell_prob, demo_rng));

  SweepResult result;
  result.dynamics_levels = cfg.sweep.dynamics_levels;
  result.goal_levels = cfg.sweep.goal_levels;
  const std::size_t n_cells =
      result.dynamics_levels.size() * result.goal_levels.size();
  result.cells.resize(n_cells);

  SelectorConfig sel = cfg.selector;
  sel.record_sample_terminals = false;

  const auto run_cell = [&](std::size_t idx) {
    const std::size_t di = idx / result.goal_levels.size();
    const std::size_t gi = idx % result.goal_levels.size();
    const double p_dyn = result.dynamics_levels[di];
    const double p_goal = result.goal_levels[gi];
    const ControllerLibrary lib =
        benchmark_library(spec, p_dyn, cfg.beta_semantics, cfg.noise.corruption);
    const GoalScorer scorer = base.with_noise(p_goal, cfg.noise.goal_noise_kind);
    std::vector<int> activations;
    activations.reserve(cfg.sweep.episodes_per_cell);
    int successes = 0;
    for (int ep = 0; ep < cfg.sweep.episodes_per_cell; ++ep) {
      const auto trace = execute_episode(
          env, lib, scorer, sel, Rng::derive_seed(cfg.seed, static_cast<std::uint64_t>(ep)));
      activations.push_back(trace.activation_count);
      successes += trace.success ? 1 : 0;
    }
    result.cells[idx] = summarize(p_dyn, p_goal, activations, successes);
  };

  if (threads == 0) threads = std::thread::hardware_concurrency();
  if (threads <= 1 || n_cells <= 1) {
    for (std::size_t i = 0; i < n_cells; ++i) run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const unsigned workers = std::min<std::size_t>(threads, n_cells);
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < n_cells; i = next.fetch_add(1))
          run_cell(i);
      });
    for (auto& t : pool) t.join();
  }
  return result;
}

SelectionTrace run_plan(const ExperimentConfig& cfg) {
  const auto env = cfg.build_environment();
  const auto lib = cfg.build_library();
  const GoalScorer scorer =
      cfg.build_scorer().with_noise(cfg.noise.goal, cfg.noise.goal_noise_kind);
  return execute_episode(*env, lib, scorer, cfg.selector, cfg.seed);
}

GridworldSummary run_gridworld(const ExperimentConfig& cfg) {
  if (cfg.environment != "gridworld")
    throw ConfigError("gridworld command needs environment = 'gridworld'");
  const GridSpec spec = cfg.grid_spec();
  const GridEnv env(spec);
  const ControllerLibrary full =
      gridworld_library(spec, cfg.noise.dynamics, cfg.beta_semantics, cfg.noise.corruption);
  const GoalScorer scorer =
      cfg.build_scorer().with_noise(cfg.noise.goal, cfg.noise.goal_noise_kind);

  GridworldSummary summary;
  summary.episodes = cfg.episodes;
  const struct {
    std::uint64_t row;
    ControllerLibrary lib;
    int* successes;
  } rows[] = {
      {0, full.subset({1}), &summary.waypoint_only},
      {1, full.subset({2}), &summary.local_only},
      {2, full, &summary.composed},
  };
  for (const auto& row : rows) {
    for (int ep = 0; ep < cfg.episodes; ++ep) {
      const auto trace =
          execute_episode(env, row.lib, scorer, cfg.selector,
                          Rng::derive_seed(cfg.seed, row.row, static_cast<std::uint64_t>(ep)));
      *row.successes += trace.success ? 1 : 0;
    }
  }
  return summary;
}

std::string GridworldSummary::table() const {
  std::ostringstream out;
  const auto line = [&](const char* label, int successes) {
    out << label << std::string(20 - std::string(label).size(), ' ') << successes << "/"
        << episodes << "\n";
  };
  out << "library             full-task successes\n";
  line("waypoint-only", waypoint_only);
  line("local-only", local_only);
  line("composed", composed);
  return out.str();
}

nlohmann::json GridworldSummary::to_json() const {
  return {{"episodes", episodes},
          {"rows",
           {{{"library", "waypoint-only"}, {"successes", waypoint_only}},
            {{"library", "local-only"}, {"successes", local_only}},
            {{"library", "composed"}, {"successes", composed}}}}};
}

namespace {

State representative_terminal(const CandidateEvaluation& e) {
  std::map<State, int> counts;
  for (const auto& s : e.predicted_terminals) ++counts[s];
  State best;
  int best_count = -1;
  for (const auto& [s, n] : counts) {
    if (n > best_count) {
      best = s;
      best_count = n;
    }
  }
  return best;
}

}  // namespace

std::string format_trace(const SelectionTrace& trace) {
  std::ostringstream out;
  out << "episode seed " << trace.seed << " (" << trace.environment << ")\n";
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& step = trace.steps[i];
    out << "planning step " << i << "  state " << step.state.str() << "\n";
    for (const auto& e : step.evaluations) {
      char buf[160];
      if (e.applicable) {
        std::snprintf(buf, sizeof buf, "  %2d %-20s mean %.4f  stderr %.4f  predicted %s\n",
                      e.controller_id, e.name.c_str(), e.mean, e.stderr_,
                      e.predicted_terminals.empty()
                          ? "-"
                          : representative_terminal(e).str().c_str());
      } else {
        std::snprintf(buf, sizeof buf, "  %2d %-20s not applicable\n", e.controller_id,
                      e.name.c_str());
      }
      out << buf;
    }
    out << "  -> chose " << step.chosen_id << ", executed "
        << step.executed.size() - 1 << " steps, state " << step.post.str() << "\n";
  }
  out << (trace.success ? "goal reached" : "episode failed") << " after "
      << trace.activation_count << " activations, " << trace.primitive_steps
      << " primitive steps";
  if (!trace.diagnostic.empty()) out << " (" << trace.diagnostic << ")";
  out << "\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path);
  out << content;
  if (!out) throw ConfigError("cannot write " + path);
}

int cmd_plan(const ExperimentConfig& cfg, const std::string& out_path,
             std::ostream& log) {
  const SelectionTrace trace = run_plan(cfg);
  write_file(out_path, trace.to_json().dump(2) + "\n");
  log << format_trace(trace);
  log << "trace written to " << out_path << "\n";
  return 0;
}

int cmd_sweep(const ExperimentConfig& cfg, const std::string& out_path,
              std::ostream& log) {
  const SweepResult result = run_sweep(cfg);
  write_file(out_path, result.to_csv());
  for (const auto& cell : result.cells) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "p_dyn %.2f  p_goal %.2f  mean %.2f  median %.1f  success %.3f\n",
                  cell.p_dyn, cell.p_goal, cell.mean_activations,
                  cell.median_activations, cell.success_rate);
    log << buf;
  }
  log << "sweep written to " << out_path << "\n";
  return 0;
}

int cmd_demo_gen(const ExperimentConfig& cfg, const std::string& out_path,
                 std::ostream& log) {
  const auto demos = cfg.build_demos();
  write_file(out_path, demos_to_jsonl(demos));
  log << demos.size() << " demonstrations written to " << out_path << "\n";
  return 0;
}

int cmd_fit_gsm(const std::string& demos_path, const std::string& out_path,
                std::ostream& log) {
  std::vector<Demonstration> demos;
  try {
    demos = demos_from_jsonl(read_file(demos_path));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  GoalScorer scorer;
  try {
    scorer = GoalScorer::fit(demos);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  write_file(out_path, scorer.to_json().dump(2) + "\n");
  for (const auto& d : demos) {
    const auto report = scorer.monotonicity_report(d);
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "demo %d: first %.4f  last %.4f  strict decreases %d\n", d.id,
                  report.trace.front().second, report.trace.back().second,
                  report.strict_decreases);
    log << buf;
  }
  log << "scorer written to " << out_path << "\n";
  return 0;
}

int cmd_gridworld(const ExperimentConfig& cfg, const std::string& out_path,
                  std::ostream& log) {
  const GridworldSummary summary = run_gridworld(cfg);
  write_file(out_path, summary.to_json().dump(2) + "\n");
  log << summary.table();
  log << "summary written to " << out_path << "\n";
  return 0;
}

}  // namespace hmpc
