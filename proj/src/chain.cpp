#include "hmpc/chain.hpp"

#include <stdexcept>

namespace hmpc {

ChainStep chain_step(const ChainSpec& spec, int s, Action a) {
  if (s < 1 || s > spec.n_states)
    throw std::out_of_range("chain_step: state " + std::to_string(s) +
                            " outside 1.." + std::to_string(spec.n_states));
  if (a == Action::Right) {
    if (s == spec.n_states) return {State::chain(spec.goal_state()), 1.0, true};
    return {State::chain(s + 1), 0.0, false};
  }
  if (a == Action::Left) {
    return {State::chain(s == 1 ? 1 : s - 1), 0.0, false};
  }
  throw std::invalid_argument("chain_step: action not in {left, right}");
}

ChainEnv::ChainEnv(ChainSpec spec) : spec_(spec) {
  if (spec_.n_states < 2) throw std::invalid_argument("chain: n_states < 2");
  if (spec_.start_state < 1 || spec_.start_state > spec_.n_states)
    throw std::invalid_argument("chain: start_state outside 1..n_states");
}

State ChainEnv::step(const State& s, Action a) const {
  return chain_step(spec_, s.index(), a).next;
}

bool ChainEnv::goal_reached(const State& s) const {
  return !s.is_cell() && s.index() == spec_.goal_state();
}

bool ChainEnv::contains(const State& s) const {
  return !s.is_cell() && s.index() >= 1 && s.index() <= spec_.goal_state();
}

std::vector<State> ChainEnv::state_set() const {
  std::vector<State> states;
  states.reserve(spec_.goal_state());
  for (int i = 1; i <= spec_.goal_state(); ++i) states.push_back(State::chain(i));
  return states;
}

DynamicsModel make_chain_dynamics(const ChainSpec& spec, double noise_p,
                                  Corruption corruption) {
  if (noise_p < 0.0 || noise_p > 1.0)
    throw std::invalid_argument("dynamics noise outside [0,1]");
  DynamicsModel m;
  m.noise_p = noise_p;
  m.corruption = corruption;
  const int goal = spec.goal_state();
  m.nominal = [spec, goal](const State& s, Action a) {
    if (s.index() == goal) return s;
    return chain_step(spec, s.index(), a).next;
  };
  m.jitter = [goal](const State& s, Rng& rng) {
    const int lo = s.index() == 1 ? 1 : s.index() - 1;
    const int hi = s.index() == goal ? goal : s.index() + 1;
    return State::chain(lo + static_cast<int>(rng.uniform_index(hi - lo + 1)));
  };
  m.uniform_state = [goal](Rng& rng) {
    return State::chain(1 + static_cast<int>(rng.uniform_index(goal)));
  };
  m.absorbing = [goal](const State& s) { return s.index() == goal; };
  return m;
}

ControllerLibrary benchmark_library(const ChainSpec& spec, double dynamics_noise,
                                    BetaSemantics semantics, Corruption corruption,
                                    double random_controller_beta) {
  const auto dynamics = make_chain_dynamics(spec, dynamics_noise, corruption);
  const auto anywhere = [](const State&) { return true; };

  const auto fixed_policy = [](Action a) {
    return [a](const State&, Rng&) { return a; };
  };
  const auto fixed_dist = [](Action a) {
    return [a](const State&) {
      return std::vector<std::pair<Action, double>>{{a, 1.0}};
    };
  };

  std::vector<Controller> cs;
  const double right_betas[] = {0.9, 0.5, 0.2};
  for (int i = 0; i < 3; ++i) {
    Controller c;
    c.id = i + 1;
    c.name = "right-" + std::to_string(right_betas[i]).substr(0, 3);
    c.initiation = anywhere;
    c.policy = fixed_policy(Action::Right);
    c.action_distribution = fixed_dist(Action::Right);
    c.termination = PerStepProbability{effective_stop_prob(right_betas[i], semantics)};
    c.dynamics = dynamics;
    cs.push_back(std::move(c));
  }

  Controller random;
  random.id = 4;
  random.name = "random";
  random.initiation = anywhere;
  random.policy = [](const State&, Rng& rng) {
    return rng.uniform_index(2) == 0 ? Action::Left : Action::Right;
  };
  random.action_distribution = [](const State&) {
    return std::vector<std::pair<Action, double>>{{Action::Left, 0.5},
                                                  {Action::Right, 0.5}};
  };
  random.termination =
      PerStepProbability{effective_stop_prob(random_controller_beta, semantics)};
  random.dynamics = dynamics;
  cs.push_back(std::move(random));

  Controller left;
  left.id = 5;
  left.name = "left-0.5";
  left.initiation = anywhere;
  left.policy = fixed_policy(Action::Left);
  left.action_distribution = fixed_dist(Action::Left);
  left.termination = PerStepProbability{effective_stop_prob(0.5, semantics)};
  left.dynamics = dynamics;
  cs.push_back(std::move(left));

  return ControllerLibrary(std::move(cs));
}

std::vector<Demonstration> generate_chain_demos(const ChainSpec& spec, int count,
                                                double dwell_prob, Rng& rng) {
  if (count < 1) throw std::invalid_argument("generate_chain_demos: count < 1");
  std::vector<Demonstration> demos;
  demos.reserve(count);
  for (int id = 0; id < count; ++id) {
    Demonstration d;
    d.id = id;
    int s = spec.start_state;
    d.states.push_back(State::chain(s));
    while (s <= spec.n_states) {
      if (dwell_prob > 0.0 && s != spec.start_state && rng.bernoulli(dwell_prob)) {
        d.states.push_back(State::chain(s));
        continue;
      }
      ++s;
      d.states.push_back(State::chain(s));
    }
    demos.push_back(std::move(d));
  }
  return demos;
}

}  // namespace hmpc
