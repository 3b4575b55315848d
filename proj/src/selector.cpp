#include "hmpc/selector.hpp"

#include <algorithm>

namespace hmpc {

namespace {
constexpr std::uint64_t kEvalStream = 0;
constexpr std::uint64_t kExecStream = 1;
}  // namespace

std::vector<CandidateEvaluation> evaluate_candidates(const State& s,
                                                     const ControllerLibrary& lib,
                                                     const GoalScorer& g,
                                                     const SelectorConfig& cfg,
                                                     const Rng& step_rng) {
  if (lib.empty()) throw std::invalid_argument("evaluate_candidates: empty library");
  std::vector<CandidateEvaluation> evals;
  evals.reserve(lib.size());
  for (const auto& c : lib.controllers()) {
    CandidateEvaluation e;
    e.controller_id = c.id;
    e.name = c.name;
    e.applicable = applicable(c, s);
    if (e.applicable) {
      Rng sub = step_rng.derive(static_cast<std::uint64_t>(c.id));
      ExpectedGoal eg = expected_goal(c.dynamics, c, g, s, cfg.horizon, cfg.samples,
                                      sub, cfg.record_sample_terminals);
      e.mean = eg.mean;
      e.stderr_ = eg.stderr_;
      e.samples = cfg.samples;
      e.predicted_terminals = std::move(eg.terminals);
    }
    evals.push_back(std::move(e));
  }
  return evals;
}

int select(const std::vector<CandidateEvaluation>& evals) {
  const CandidateEvaluation* best = nullptr;
  for (const auto& e : evals) {
    if (!e.applicable) continue;
    if (!best || e.mean > best->mean ||
        (e.mean == best->mean && e.controller_id < best->controller_id))
      best = &e;
  }
  if (!best) throw NoApplicableController();
  return best->controller_id;
}

std::vector<State> execute_activation(const Environment& env, const Controller& c,
                                      const State& s0, Rng& rng, int cap,
                                      bool single_step, bool* truncated) {
  std::vector<State> states{s0};
  const StopPredicate* predicate = nullptr;
  int limit = 0;
  bool over_cap = false;

  if (single_step) {
    limit = 1;
  } else {
    const auto length = sample_activation_length(c.termination, rng);
    if (length) {
      limit = std::min(*length, cap);
      over_cap = *length > cap;
    } else {
      limit = cap;
      predicate = &std::get<StopPredicate>(c.termination);
      over_cap = true;
    }
  }

  for (int k = 0; k < limit; ++k) {
    const State s = states.back();
    if (env.goal_reached(s)) {
      over_cap = false;
      break;
    }
    if (predicate && predicate->holds(s)) {
      over_cap = false;
      break;
    }
    const Action a = c.policy(s, rng);
    states.push_back(env.step(s, a));
  }
  if (predicate && over_cap) {
    const State& last = states.back();
    if (predicate->holds(last) || env.goal_reached(last)) over_cap = false;
  }
  if (truncated) *truncated = over_cap && !single_step;
  return states;
}

SelectionTrace execute_episode(const Environment& env, const ControllerLibrary& lib,
                               const GoalScorer& g, const SelectorConfig& cfg,
                               std::uint64_t seed) {
  if (cfg.max_planning_steps < 1)
    throw std::invalid_argument("execute_episode: max_planning_steps < 1");
  SelectionTrace trace;
  trace.environment = env.name();
  trace.seed = seed;

  const Rng root(seed);
  State s = env.start();

  for (int step = 0;; ++step) {
    if (env.goal_reached(s)) {
      trace.success = true;
      break;
    }
    if (step >= cfg.max_planning_steps) {
      trace.diagnostic = "planning step limit reached";
      break;
    }

    const Rng eval_rng = root.derive(static_cast<std::uint64_t>(step), kEvalStream);
    auto evals = evaluate_candidates(s, lib, g, cfg, eval_rng);
    const bool any_applicable =
        std::any_of(evals.begin(), evals.end(),
                    [](const CandidateEvaluation& e) { return e.applicable; });
    if (!any_applicable) {
      trace.diagnostic = "no applicable controller at state " + s.str() +
                         " (planning step " + std::to_string(step) + ")";
      break;
    }
    const int chosen = select(evals);

    Rng exec_rng = root.derive(static_cast<std::uint64_t>(step), kExecStream);
    PlanningStepRecord record;
    record.state = s;
    record.evaluations = std::move(evals);
    record.chosen_id = chosen;
    record.executed =
        execute_activation(env, *lib.find(chosen), s, exec_rng, cfg.activation_cap,
                           cfg.replan_every_step, &record.activation_truncated);
    record.post = record.executed.back();
    trace.primitive_steps += static_cast<long>(record.executed.size()) - 1;
    s = record.post;
    trace.steps.push_back(std::move(record));
  }
  trace.activation_count = static_cast<int>(trace.steps.size());
  return trace;
}

int oracle_select(const State& s, const ControllerLibrary& lib, const GoalScorer& g,
                  const SelectorConfig& cfg, const ChainSpec& spec) {
  const Controller* best = nullptr;
  double best_score = 0.0;
  for (const auto& c : lib.controllers()) {
    if (!applicable(c, s)) continue;
    const double score = exact_expected_score(c, g, s, cfg.horizon, spec);
    if (!best || score > best_score ||
        (score == best_score && c.id < best->id)) {
      best = &c;
      best_score = score;
    }
  }
  if (!best) throw NoApplicableController();
  return best->id;
}

namespace {

nlohmann::json states_to_json(const std::vector<State>& states) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : states) arr.push_back(s.str());
  return arr;
}

}  // namespace

nlohmann::json SelectionTrace::to_json() const {
  nlohmann::json steps_json = nlohmann::json::array();
  for (const auto& step : steps) {
    nlohmann::json evals = nlohmann::json::array();
    for (const auto& e : step.evaluations) {
      nlohmann::json ev = {{"id", e.controller_id},
                           {"name", e.name},
                           {"applicable", e.applicable}};
      if (e.applicable) {
        ev["mean"] = e.mean;
        ev["stderr"] = e.stderr_;
        ev["samples"] = e.samples;
        if (!e.predicted_terminals.empty())
          ev["predicted_terminals"] = states_to_json(e.predicted_terminals);
      }
      evals.push_back(std::move(ev));
    }
    steps_json.push_back({{"state", step.state.str()},
                          {"evaluations", evals},
                          {"chosen", step.chosen_id},
                          {"executed", states_to_json(step.executed)},
                          {"post", step.post.str()},
                          {"truncated", step.activation_truncated}});
  }
  return {{"environment", environment},
          {"seed", seed},
          {"success", success},
          {"diagnostic", diagnostic},
          {"activation_count", activation_count},
          {"primitive_steps", primitive_steps},
          {"steps", steps_json}};
}

}  // namespace hmpc
