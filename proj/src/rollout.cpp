#include "hmpc/rollout.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hmpc {

State predict_step(const DynamicsModel& m, const State& s, Action a, Rng& rng) {
  if (m.absorbing && m.absorbing(s)) return s;
  const bool corrupted = rng.bernoulli(m.noise_p);
  if (!corrupted) return m.nominal(s, a);
  if (m.corruption == Corruption::LocalJitter) return m.jitter(s, rng);
  return m.uniform_state(rng);
}

RolloutSample rollout(const DynamicsModel& m, const Controller& c, const State& s0,
                      const Horizon& h, Rng& rng) {
  RolloutSample sample;
  sample.states.push_back(s0);

  const bool until_termination = std::holds_alternative<UntilTermination>(h);
  int limit = 0;
  const StopPredicate* predicate = nullptr;
  bool over_cap = false;

  if (const auto* fixed = std::get_if<FixedSteps>(&h)) {
    if (fixed->steps < 1) throw std::invalid_argument("rollout: steps < 1");
    limit = fixed->steps;
  } else {
    const int cap = std::get<UntilTermination>(h).cap;
    if (cap < 1) throw std::invalid_argument("rollout: cap < 1");
    const auto length = sample_activation_length(c.termination, rng);
    if (length) {
      limit = std::min(*length, cap);
      over_cap = *length > cap;
    } else {
      limit = cap;
      predicate = &std::get<StopPredicate>(c.termination);
      over_cap = true;  // cleared below if the predicate fires in time
    }
  }

  for (int k = 0; k < limit; ++k) {
    const State s = sample.states.back();
    if (until_termination && m.absorbing && m.absorbing(s)) {
      over_cap = false;
      break;
    }
    if (predicate && predicate->holds(s)) {
      over_cap = false;
      break;
    }
    const Action a = c.policy(s, rng);
    sample.states.push_back(predict_step(m, s, a, rng));
    ++sample.steps;
  }
  if (predicate && over_cap) {
    const State& last = sample.states.back();
    if (predicate->holds(last) || (m.absorbing && m.absorbing(last))) over_cap = false;
  }
  sample.truncated = until_termination && over_cap;
  return sample;
}

ExpectedGoal expected_goal(const DynamicsModel& m, const Controller& c,
                           const GoalScorer& g, const State& s0, const Horizon& h,
                           int samples, Rng& rng, bool keep_terminals) {
  if (samples < 1) throw std::invalid_argument("expected_goal: samples < 1");
  ExpectedGoal out;
  if (keep_terminals) out.terminals.reserve(samples);

  std::vector<double> scores;
  scores.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    Rng sub = rng.derive(static_cast<std::uint64_t>(i));
    const RolloutSample sample = rollout(m, c, s0, h, sub);
    scores.push_back(g.sample_point(sample.terminal(), sub));
    if (keep_terminals) out.terminals.push_back(sample.terminal());
  }

  // Identical samples mean an exactly deterministic estimate; skip the
  // accumulation so no rounding dust leaks into the zero-spread contract.
  const bool all_equal = std::all_of(scores.begin(), scores.end(),
                                     [&](double v) { return v == scores.front(); });
  if (all_equal) {
    out.mean = scores.front();
    out.stderr_ = 0.0;
    return out;
  }
  double mean = 0.0;
  for (double v : scores) mean += v;
  mean /= samples;
  double ss = 0.0;
  for (double v : scores) ss += (v - mean) * (v - mean);
  out.mean = mean;
  out.stderr_ = std::sqrt(ss / (samples * (samples - 1.0)));
  return out;
}

namespace {

// Transition over chain states 1..goal (goal absorbing) for one predicted
// step under the controller's declared action distribution and noise mixture.
std::vector<double> propagate(const std::vector<double>& cur, const Controller& c,
                              const ChainSpec& spec) {
  const int goal = spec.goal_state();
  std::vector<double> nxt(goal + 1, 0.0);
  nxt[goal] = cur[goal];
  const double keep = 1.0 - c.dynamics.noise_p;
  const bool local = c.dynamics.corruption == Corruption::LocalJitter;
  for (int s = 1; s < goal; ++s) {
    const double mass = cur[s];
    if (mass == 0.0) continue;
    if (keep > 0.0) {
      for (const auto& [a, pa] : c.action_distribution(State::chain(s))) {
        const int t = c.dynamics.nominal(State::chain(s), a).index();
        nxt[t] += mass * keep * pa;
      }
    }
    if (c.dynamics.noise_p > 0.0) {
      if (local) {
        const int lo = s == 1 ? 1 : s - 1;
        const int hi = s == goal ? goal : s + 1;
        const double share = mass * c.dynamics.noise_p / (hi - lo + 1);
        for (int t = lo; t <= hi; ++t) nxt[t] += share;
      } else {
        const double share = mass * c.dynamics.noise_p / goal;
        for (int t = 1; t <= goal; ++t) nxt[t] += share;
      }
    }
  }
  return nxt;
}

}  // namespace

double exact_expected_score(const Controller& c, const GoalScorer& g, const State& s0,
                            const Horizon& h, const ChainSpec& spec) {
  if (s0.is_cell())
    throw std::invalid_argument("exact_expected_score: unsupported environment");
  if (!c.action_distribution)
    throw std::invalid_argument(
        "exact_expected_score: controller declares no action distribution");
  if (g.noise_prob() > 0.0)
    throw std::invalid_argument("exact_expected_score: scorer must be noise-free");
  const int goal = spec.goal_state();
  if (s0.index() < 1 || s0.index() > goal)
    throw std::invalid_argument("exact_expected_score: state off the chain");
  // The nominal model must be the (absorbing) chain transition.
  for (int s = 1; s <= spec.n_states; ++s) {
    for (Action a : {Action::Left, Action::Right}) {
      const State predicted = c.dynamics.nominal(State::chain(s), a);
      if (predicted.is_cell() || predicted != chain_step(spec, s, a).next)
        throw std::invalid_argument("exact_expected_score: unsupported environment");
    }
  }

  std::vector<double> scores(goal + 1, 0.0);
  for (int s = 1; s <= goal; ++s) scores[s] = g.point_at(State::chain(s));
  const auto score_of = [&](const std::vector<double>& dist) {
    double acc = 0.0;
    for (int s = 1; s <= goal; ++s) acc += dist[s] * scores[s];
    return acc;
  };
  const auto total = [&](const std::vector<double>& dist) {
    double acc = 0.0;
    for (int s = 1; s <= goal; ++s) acc += dist[s];
    return acc;
  };

  std::vector<double> cur(goal + 1, 0.0);
  cur[s0.index()] = 1.0;

  if (const auto* fixed = std::get_if<FixedSteps>(&h)) {
    for (int k = 0; k < fixed->steps; ++k) cur = propagate(cur, c, spec);
    return score_of(cur);
  }

  const int cap = std::get<UntilTermination>(h).cap;
  double stop_prob = 0.0;
  int fixed_length = 0;
  if (const auto* per_step = std::get_if<PerStepProbability>(&c.termination)) {
    if (!(per_step->prob > 0.0))
      throw std::invalid_argument("non-terminating controller: stop probability is 0");
    stop_prob = per_step->prob;
  } else if (const auto* fixed = std::get_if<MaxSteps>(&c.termination)) {
    fixed_length = std::min(fixed->steps, cap);
  } else {
    throw std::invalid_argument(
        "exact_expected_score: predicate termination not supported");
  }

  if (fixed_length > 0) {
    for (int k = 0; k < fixed_length; ++k) cur = propagate(cur, c, spec);
    return score_of(cur);
  }

  double expected = 0.0;
  for (int k = 0; k < cap; ++k) {
    // Mass already at the goal has terminated there (same terminal either
    // way); keep it in `cur` and let the termination peel drain it.
    cur = propagate(cur, c, spec);
    expected += stop_prob * score_of(cur);
    for (auto& v : cur) v *= 1.0 - stop_prob;
    if (total(cur) < 1e-12) break;
  }
  expected += score_of(cur);  // cap reached (or residual), terminate in place
  return expected;
}

}  // namespace hmpc
