#pragma once

#include <variant>
#include <vector>

#include "hmpc/chain.hpp"
#include "hmpc/controller.hpp"
#include "hmpc/goalscore.hpp"

namespace hmpc {

/// Exactly this many predicted steps (prediction pads in place once it hits
/// an absorbing state, so the step count stays exact).
struct FixedSteps {
  int steps = 1;
};

/// Predict until the controller's own termination criterion fires, with a
/// hard cap on primitive steps.
struct UntilTermination {
  int cap = 200;
};

using Horizon = std::variant<FixedSteps, UntilTermination>;

struct RolloutSample {
  std::vector<State> states;  // states.front() is the start state
  int steps = 0;              // states.size() == steps + 1
  bool truncated = false;     // the cap cut the activation short

  const State& terminal() const { return states.back(); }
};

/// One predicted step: the nominal transition with probability 1 - noise_p,
/// otherwise a corruption draw. Consumes one corruption-decision draw plus at
/// most one corruption draw; absorbing states return themselves and consume
/// nothing.
State predict_step(const DynamicsModel& m, const State& s, Action a, Rng& rng);

/// Chained prediction of one controller activation from s0. Randomness is
/// consumed linearly, one step after another, so a FixedSteps(a + b) rollout
/// equals FixedSteps(a) followed by FixedSteps(b) continuing on the same
/// stream.
RolloutSample rollout(const DynamicsModel& m, const Controller& c, const State& s0,
                      const Horizon& h, Rng& rng);

struct ExpectedGoal {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::vector<State> terminals;  // one predicted terminal per sample, when kept
};

/// Monte-Carlo estimate of the expected goal score of the predicted
/// post-activation state: `samples` independent rollouts (substream i drives
/// rollout i), one score sample per rollout terminal, reduced in sample
/// order.
ExpectedGoal expected_goal(const DynamicsModel& m, const Controller& c,
                           const GoalScorer& g, const State& s0, const Horizon& h,
                           int samples, Rng& rng, bool keep_terminals = true);

/// Closed-form value of the same expectation on the chain, by propagating the
/// full state distribution step by step (goal absorption and geometric
/// termination folded in analytically, residual mass below 1e-12 dropped).
/// Requires a chain controller that declares its action distribution and a
/// noise-free scorer.
double exact_expected_score(const Controller& c, const GoalScorer& g, const State& s0,
                            const Horizon& h, const ChainSpec& spec);

}  // namespace hmpc
