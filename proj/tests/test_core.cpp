#include <doctest.h>

#include <cmath>
#include <vector>

#include "hmpc/chain.hpp"
#include "hmpc/controller.hpp"
#include "hmpc/experiment.hpp"
#include "hmpc/gridworld.hpp"
#include "hmpc/space.hpp"

using namespace hmpc;

TEST_CASE("states serialize identically iff equal") {
  const std::vector<State> states = {State::chain(1),  State::chain(7),
                                     State::chain(-3), State::cell(1, 0),
                                     State::cell(0, 1), State::cell(3, 4)};
  for (const auto& a : states)
    for (const auto& b : states) CHECK((a == b) == (a.str() == b.str()));
}

TEST_CASE("state text form round-trips") {
  for (const auto& s : {State::chain(19), State::cell(3, 4), State::cell(-1, 2)})
    CHECK(State::parse(s.str()) == s);
  CHECK_THROWS_AS(State::parse("junk"), std::invalid_argument);
}

TEST_CASE("environments only produce member states") {
  const ChainEnv chain(ChainSpec{19, 1});
  for (const auto& s : chain.state_set()) {
    CHECK(chain.contains(s));
    if (!chain.goal_reached(s))
      for (Action a : chain.action_set()) CHECK(chain.contains(chain.step(s, a)));
  }
  const GridEnv grid(GridSpec::parse(default_grid_map()));
  for (const auto& s : grid.state_set()) {
    CHECK(grid.contains(s));
    for (Action a : grid.action_set()) CHECK(grid.contains(grid.step(s, a)));
  }
}

TEST_CASE("applicable: all chain controllers start anywhere") {
  const auto lib = benchmark_library(ChainSpec{19, 1}, 0.0);
  for (const auto& c : lib.controllers())
    for (int s = 1; s <= 19; ++s) CHECK(applicable(c, State::chain(s)));
}

TEST_CASE("applicable: local-greedy needs the goal in its window") {
  const GridSpec spec = GridSpec::parse(default_grid_map());
  const auto lib = gridworld_library(spec);
  const Controller* local = lib.find(2);
  REQUIRE(local != nullptr);
  CHECK_FALSE(applicable(*local, spec.start));
  CHECK(applicable(*local, State::cell(spec.goal.x() - 1, spec.goal.y())));
}

TEST_CASE("initiation predicates are pure") {
  const GridSpec spec = GridSpec::parse(default_grid_map());
  const auto lib = gridworld_library(spec);
  const GridEnv env(spec);
  for (const auto& c : lib.controllers())
    for (const auto& s : env.state_set()) CHECK(applicable(c, s) == applicable(c, s));
}

TEST_CASE("sample_activation_length: fixed and certain cases") {
  Rng rng(3);
  CHECK(sample_activation_length(MaxSteps{10}, rng) == 10);
  for (int i = 0; i < 50; ++i)
    CHECK(sample_activation_length(PerStepProbability{1.0}, rng) == 1);
  const TerminationModel pred = StopPredicate{[](const State&) { return true; }};
  CHECK_FALSE(sample_activation_length(pred, rng).has_value());
}

TEST_CASE("sample_activation_length: zero stop probability is an error") {
  Rng rng(3);
  CHECK_THROWS_WITH_AS(sample_activation_length(PerStepProbability{0.0}, rng).has_value(),
                       doctest::Contains("non-terminating controller"),
                       std::invalid_argument);
}

TEST_CASE("sample_activation_length: empirical mean is 1/beta") {
  const int n = 100000;
  for (double beta : {0.9, 0.5, 0.2}) {
    Rng rng(1000 + static_cast<std::uint64_t>(beta * 10));
    const TerminationModel t = PerStepProbability{beta};
    double sum = 0.0, ss = 0.0;
    std::vector<int> lengths(n);
    for (int i = 0; i < n; ++i) {
      lengths[i] = *sample_activation_length(t, rng);
      sum += lengths[i];
    }
    const double mean = sum / n;
    for (int len : lengths) ss += (len - mean) * (len - mean);
    const double stderr_ = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    CHECK(std::abs(mean - 1.0 / beta) <= 3.0 * stderr_);
    if (beta == 0.2) {
      CHECK(mean > 4.9);
      CHECK(mean < 5.1);
    }
  }
}

TEST_CASE("same seed, same sampled lengths and policy actions") {
  const auto lib = benchmark_library(ChainSpec{19, 1}, 0.0);
  const Controller* random_walk = lib.find(4);
  REQUIRE(random_walk != nullptr);
  Rng a(77), b(77);
  for (int i = 0; i < 200; ++i) {
    CHECK(*sample_activation_length(random_walk->termination, a) ==
          *sample_activation_length(random_walk->termination, b));
    CHECK(random_walk->policy(State::chain(5), a) ==
          random_walk->policy(State::chain(5), b));
  }
}

TEST_CASE("policy outputs stay inside the action set") {
  const ChainEnv chain(ChainSpec{19, 1});
  const auto chain_lib = benchmark_library(chain.spec(), 0.0);
  Rng rng(9);
  for (const auto& c : chain_lib.controllers())
    for (const auto& s : chain.state_set()) {
      if (chain.goal_reached(s)) continue;
      for (int i = 0; i < 8; ++i) {
        const Action a = c.policy(s, rng);
        CHECK((a == Action::Left || a == Action::Right));
      }
    }

  const GridSpec spec = GridSpec::parse(default_grid_map());
  const GridEnv grid(spec);
  const auto grid_lib = gridworld_library(spec);
  for (const auto& c : grid_lib.controllers())
    for (const auto& s : grid.state_set())
      for (int i = 0; i < 4; ++i) (void)c.policy(s, rng);  // total, no throw
}

TEST_CASE("declared action distributions match sampled policies") {
  const auto lib = benchmark_library(ChainSpec{19, 1}, 0.0);
  Rng rng(15);
  for (const auto& c : lib.controllers()) {
    REQUIRE(c.action_distribution);
    const auto dist = c.action_distribution(State::chain(7));
    double total = 0.0;
    for (const auto& [a, p] : dist) total += p;
    CHECK(total == doctest::Approx(1.0));
    if (dist.size() == 1)
      for (int i = 0; i < 16; ++i)
        CHECK(c.policy(State::chain(7), rng) == dist.front().first);
  }
}

TEST_CASE("library rejects duplicate ids") {
  Controller a, b;
  a.id = 1;
  b.id = 1;
  CHECK_THROWS_AS(ControllerLibrary({a, b}), std::invalid_argument);
}

TEST_CASE("effective stop probability under both semantics") {
  CHECK(effective_stop_prob(0.9, BetaSemantics::Terminate) == doctest::Approx(0.9));
  CHECK(effective_stop_prob(0.9, BetaSemantics::Continue) == doctest::Approx(0.1));
  CHECK_THROWS_AS(effective_stop_prob(1.5, BetaSemantics::Terminate),
                  std::invalid_argument);
}
