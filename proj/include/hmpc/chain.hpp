#pragma once

#include <vector>

#include "hmpc/controller.hpp"
#include "hmpc/goalscore.hpp"
#include "hmpc/space.hpp"

namespace hmpc {

/// N-state chain with actions left/right. Moving right from the last state
/// enters the absorbing success state n_states + 1 and pays +1; the left end
/// clamps at state 1.
struct ChainSpec {
  int n_states = 19;
  int start_state = 1;

  int goal_state() const { return n_states + 1; }
};

struct ChainStep {
  State next;
  double reward = 0.0;
  bool done = false;
};

ChainStep chain_step(const ChainSpec& spec, int s, Action a);

class ChainEnv : public Environment {
 public:
  explicit ChainEnv(ChainSpec spec);

  std::string name() const override { return "chain"; }
  State start() const override { return State::chain(spec_.start_state); }
  State step(const State& s, Action a) const override;
  bool goal_reached(const State& s) const override;
  bool contains(const State& s) const override;
  std::vector<Action> action_set() const override { return {Action::Left, Action::Right}; }
  std::vector<State> state_set() const override;

  const ChainSpec& spec() const { return spec_; }

 private:
  ChainSpec spec_;
};

/// Forward model shared by the benchmark controllers: the true chain
/// transition (absorbing at the goal) wrapped with the given step-corruption
/// probability.
DynamicsModel make_chain_dynamics(const ChainSpec& spec, double noise_p,
                                  Corruption corruption = Corruption::LocalJitter);

/// The 5-controller benchmark set: three right-movers with termination
/// probabilities 0.9 / 0.5 / 0.2, a random-action controller and a
/// left-mover, all startable anywhere on the chain.
ControllerLibrary benchmark_library(const ChainSpec& spec, double dynamics_noise,
                                    BetaSemantics semantics = BetaSemantics::Terminate,
                                    Corruption corruption = Corruption::LocalJitter,
                                    double random_controller_beta = 0.5);

/// Rightward full-task walks start -> goal. dwell_prob > 0 inserts random
/// repeats at interior states (never on a demo's first state), so the
/// normalized time labels stay monotone and the endpoints stay exact.
std::vector<Demonstration> generate_chain_demos(const ChainSpec& spec, int count,
                                                double dwell_prob, Rng& rng);

}  // namespace hmpc
