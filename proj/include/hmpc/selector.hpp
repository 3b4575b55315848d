#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hmpc/rollout.hpp"

namespace hmpc {

struct SelectorConfig {
  Horizon horizon = UntilTermination{200};
  int samples = 32;            // rollouts per candidate
  int max_planning_steps = 100;
  int activation_cap = 200;    // safety cap on true-environment activations
  bool replan_every_step = false;
  bool record_sample_terminals = true;
};

/// One controller's lookahead result at a planning step. Inapplicable
/// candidates carry no score and are never selected while an applicable one
/// exists.
struct CandidateEvaluation {
  int controller_id = 0;
  std::string name;
  bool applicable = false;
  double mean = 0.0;
  double stderr_ = 0.0;
  int samples = 0;
  std::vector<State> predicted_terminals;
};

struct PlanningStepRecord {
  State state;
  std::vector<CandidateEvaluation> evaluations;
  int chosen_id = -1;
  std::vector<State> executed;  // true states; front() == state
  State post;
  bool activation_truncated = false;
};

struct SelectionTrace {
  std::string environment;
  std::uint64_t seed = 0;
  bool success = false;
  std::string diagnostic;
  int activation_count = 0;
  long primitive_steps = 0;
  std::vector<PlanningStepRecord> steps;

  nlohmann::json to_json() const;
};

struct NoApplicableController : std::runtime_error {
  NoApplicableController() : std::runtime_error("no applicable controller") {}
};

/// Scores every controller at s: applicability, then a Monte-Carlo expected
/// goal score over cfg.samples rollouts with the controller's own dynamics
/// model. Candidate i consumes the substream step_rng.derive(id_i), so
/// candidates are independent and order-free.
std::vector<CandidateEvaluation> evaluate_candidates(const State& s,
                                                     const ControllerLibrary& lib,
                                                     const GoalScorer& g,
                                                     const SelectorConfig& cfg,
                                                     const Rng& step_rng);

/// Id of the applicable candidate with the largest mean; exact ties go to the
/// lowest id. Throws NoApplicableController when nothing is applicable.
int select(const std::vector<CandidateEvaluation>& evals);

/// Runs one controller in the true environment until its termination
/// criterion fires (or the goal / cap is reached). Returns the visited true
/// states, starting with s0.
std::vector<State> execute_activation(const Environment& env, const Controller& c,
                                      const State& s0, Rng& rng, int cap,
                                      bool single_step = false,
                                      bool* truncated = nullptr);

/// Closed-loop episode: evaluate candidates at the current true state, pick
/// one, run it to termination in the true environment, repeat until the goal
/// or the planning-step limit. Planning step k draws its evaluation stream
/// from derive(k, 0) and its execution stream from derive(k, 1) of the
/// episode seed.
SelectionTrace execute_episode(const Environment& env, const ControllerLibrary& lib,
                               const GoalScorer& g, const SelectorConfig& cfg,
                               std::uint64_t seed);

/// Exact-selection reference: argmax of exact_expected_score over applicable
/// candidates, same tie-break as select(). Chain only, noise-free scorer.
int oracle_select(const State& s, const ControllerLibrary& lib, const GoalScorer& g,
                  const SelectorConfig& cfg, const ChainSpec& spec);

}  // namespace hmpc
