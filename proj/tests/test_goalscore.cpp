#include <doctest.h>

#include <cmath>
#include <vector>

#include "hmpc/chain.hpp"
#include "hmpc/goalscore.hpp"
#include "hmpc/experiment.hpp"
#include "hmpc/gridworld.hpp"

using namespace hmpc;

namespace {

Demonstration chain_demo(int id, std::initializer_list<int> states) {
  Demonstration d;
  d.id = id;
  for (int s : states) d.states.push_back(State::chain(s));
  return d;
}

}  // namespace

TEST_CASE("fit: single demo labels are t/T") {
  const auto g = GoalScorer::fit({chain_demo(0, {1, 2, 3, 4, 5})});
  CHECK(g.point_at(State::chain(1)) == doctest::Approx(0.0));
  CHECK(g.point_at(State::chain(3)) == doctest::Approx(0.5));
  CHECK(g.point_at(State::chain(5)) == doctest::Approx(1.0));
}

TEST_CASE("fit: same normalized position across different lengths") {
  // Lengths 5 and 9, state 3 at times 2 and 4: both labels are exactly 0.5.
  const auto g = GoalScorer::fit({chain_demo(0, {1, 2, 3, 4, 5}),
                                  chain_demo(1, {1, 1, 2, 2, 3, 4, 4, 5, 5})});
  const auto& mix = g.mixture_at(State::chain(3));
  REQUIRE(mix.components.size() == 2);
  CHECK(mix.components[0].mean == doctest::Approx(0.5));
  CHECK(mix.components[1].mean == doctest::Approx(0.5));
}

TEST_CASE("fit: a revisited state becomes one spread-out component") {
  // State 3 at times 2 and 6 of T = 8: labels {0.25, 0.75}.
  const auto g =
      GoalScorer::fit({chain_demo(0, {1, 2, 3, 4, 5, 6, 3, 7, 8})});
  const auto& mix = g.mixture_at(State::chain(3));
  REQUIRE(mix.components.size() == 1);
  CHECK(mix.components[0].mean == doctest::Approx(0.5));
  CHECK(mix.components[0].spread == doctest::Approx(0.25));
}

TEST_CASE("fit: rejects empty input and single-state demos") {
  CHECK_THROWS_AS(GoalScorer::fit({}), std::invalid_argument);
  CHECK_THROWS_AS(GoalScorer::fit({chain_demo(0, {4})}), std::invalid_argument);
}

TEST_CASE("score: fitted key, determinism without noise") {
  Rng demo_rng(1);
  const auto g =
      GoalScorer::fit(generate_chain_demos(ChainSpec{19, 1}, 1, 0.0, demo_rng));
  CHECK(g.point_at(State::chain(10)) == doctest::Approx(9.0 / 19.0));
  Rng r1(5), r2(999);
  const auto d1 = g.score(State::chain(10), r1);
  const auto d2 = g.score(State::chain(10), r2);
  REQUIRE(d1.components.size() == d2.components.size());
  CHECK(d1.point() == doctest::Approx(d2.point()));
  // No randomness consumed when the wrapper is off.
  CHECK(r1.next_u64() == Rng(5).next_u64());
}

TEST_CASE("score: unseen states fall back to the nearest key, lower on ties") {
  const auto g = GoalScorer::fit({chain_demo(0, {1, 3, 5})});
  CHECK(g.nearest_key(State::chain(2)) == State::chain(1));
  CHECK(g.nearest_key(State::chain(4)) == State::chain(3));
  const double between = g.point_at(State::chain(4));
  CHECK(between >= g.point_at(State::chain(3)));
  CHECK(between <= g.point_at(State::chain(5)));
}

TEST_CASE("noisy wrapper: p = 0 is behaviorally the identity") {
  Rng demo_rng(2);
  const auto base =
      GoalScorer::fit(generate_chain_demos(ChainSpec{19, 1}, 3, 0.2, demo_rng));
  const auto wrapped = base.with_noise(0.0);
  Rng r1(7), r2(7);
  for (int s = 1; s <= 20; ++s)
    CHECK(base.sample_point(State::chain(s), r1) ==
          doctest::Approx(wrapped.sample_point(State::chain(s), r2)));
}

TEST_CASE("noisy wrapper: p = 1 averages over the fitted keys") {
  Rng demo_rng(3);
  const auto base =
      GoalScorer::fit(generate_chain_demos(ChainSpec{19, 1}, 1, 0.0, demo_rng));
  const auto wrapped = base.with_noise(1.0);
  double key_average = 0.0;
  for (const auto& k : base.keys()) key_average += base.point_at(k);
  key_average /= base.keys().size();

  Rng rng(11);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) sum += wrapped.sample_point(State::chain(4), rng);
  CHECK(sum / n == doctest::Approx(key_average).epsilon(0.01));
}

TEST_CASE("noisy wrapper: value noise substitutes a uniform draw") {
  Rng demo_rng(4);
  const auto base =
      GoalScorer::fit(generate_chain_demos(ChainSpec{19, 1}, 1, 0.0, demo_rng));
  const auto wrapped = base.with_noise(1.0, GoalNoiseKind::ValueNoise);
  Rng rng(13);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double v = wrapped.sample_point(State::chain(1), rng);
    REQUIRE(v >= 0.0);
    REQUIRE(v <= 1.0);
    sum += v;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("monotonicity: held-out rightward demo never decreases") {
  Rng demo_rng(5);
  auto demos = generate_chain_demos(ChainSpec{19, 1}, 6, 0.25, demo_rng);
  const Demonstration held_out = demos.back();
  demos.pop_back();
  const auto g = GoalScorer::fit(demos);
  CHECK(g.monotonicity_report(held_out).strict_decreases == 0);
}

TEST_CASE("monotonicity: a noisy trace does decrease") {
  Rng demo_rng(6);
  const auto demos = generate_chain_demos(ChainSpec{19, 1}, 1, 0.0, demo_rng);
  const auto noisy = GoalScorer::fit(demos).with_noise(0.5);
  Rng rng(17);
  int decreases = 0;
  double prev = noisy.sample_point(demos[0].states[0], rng);
  for (std::size_t t = 1; t < demos[0].states.size(); ++t) {
    const double v = noisy.sample_point(demos[0].states[t], rng);
    if (v < prev) ++decreases;
    prev = v;
  }
  CHECK(decreases > 0);
}

TEST_CASE("endpoints are exactly 0 and 1 on generated demos") {
  Rng demo_rng(7);
  for (const auto& demos :
       {generate_chain_demos(ChainSpec{19, 1}, 5, 0.0, demo_rng),
        generate_chain_demos(ChainSpec{19, 1}, 5, 0.3, demo_rng)}) {
    const auto g = GoalScorer::fit(demos);
    for (const auto& d : demos) {
      CHECK(g.point_at(d.states.front()) == 0.0);
      CHECK(g.point_at(d.states.back()) == 1.0);
    }
  }
  const GridSpec spec = GridSpec::parse(default_grid_map());
  const auto demos = generate_grid_demos(spec, 5, 0.3, demo_rng);
  const auto g = GoalScorer::fit(demos);
  for (const auto& d : demos) {
    CHECK(g.point_at(d.states.front()) == 0.0);
    CHECK(g.point_at(d.states.back()) == 1.0);
  }
}

TEST_CASE("property: every summary stays in [0,1] on random demos") {
  Rng rng(8);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Demonstration> demos;
    const int n_demos = 1 + static_cast<int>(rng.uniform_index(3));
    for (int d = 0; d < n_demos; ++d) {
      Demonstration demo;
      demo.id = d;
      const int len = 2 + static_cast<int>(rng.uniform_index(20));
      for (int t = 0; t < len; ++t)
        demo.states.push_back(State::chain(static_cast<int>(rng.uniform_index(12))));
      demos.push_back(std::move(demo));
    }
    const auto g = GoalScorer::fit(demos);
    for (int s = -2; s < 14; ++s) {
      const double v = g.point_at(State::chain(s));
      REQUIRE(v >= 0.0);
      REQUIRE(v <= 1.0);
    }
    Rng noise_rng(trial);
    const auto noisy = g.with_noise(0.5);
    for (int s = 0; s < 12; ++s) {
      const double v = noisy.sample_point(State::chain(s), noise_rng);
      REQUIRE(v >= 0.0);
      REQUIRE(v <= 1.0);
    }
  }
}

TEST_CASE("mixture weights sum to one") {
  Rng demo_rng(9);
  const auto demos = generate_chain_demos(ChainSpec{19, 1}, 4, 0.4, demo_rng);
  const auto g = GoalScorer::fit(demos);
  for (const auto& k : g.keys()) {
    double total = 0.0;
    for (const auto& c : g.mixture_at(k).components) total += c.weight;
    CHECK(total == doctest::Approx(1.0));
  }
}

TEST_CASE("serialization round-trips exactly") {
  Rng demo_rng(10);
  const auto demos = generate_chain_demos(ChainSpec{19, 1}, 3, 0.2, demo_rng);
  const auto g = GoalScorer::fit(demos).with_noise(0.25);
  const auto doc = g.to_json();
  const auto loaded = GoalScorer::from_json(doc);
  CHECK(loaded.to_json().dump() == doc.dump());
  for (int s = 1; s <= 20; ++s)
    CHECK(loaded.point_at(State::chain(s)) == g.point_at(State::chain(s)));
  CHECK(loaded.noise_prob() == g.noise_prob());
}

TEST_CASE("fitting is deterministic") {
  Rng r1(11), r2(11);
  const auto a = GoalScorer::fit(generate_chain_demos(ChainSpec{19, 1}, 4, 0.3, r1));
  const auto b = GoalScorer::fit(generate_chain_demos(ChainSpec{19, 1}, 4, 0.3, r2));
  CHECK(a.to_json().dump() == b.to_json().dump());
}

TEST_CASE("demo jsonl round-trip and line-numbered errors") {
  Rng demo_rng(12);
  const auto demos = generate_chain_demos(ChainSpec{19, 1}, 3, 0.2, demo_rng);
  const auto text = demos_to_jsonl(demos);
  const auto loaded = demos_from_jsonl(text);
  REQUIRE(loaded.size() == demos.size());
  for (std::size_t i = 0; i < demos.size(); ++i) {
    CHECK(loaded[i].id == demos[i].id);
    CHECK(loaded[i].states == demos[i].states);
  }

  const std::string corrupt = text + "{not json\n";
  CHECK_THROWS_WITH_AS(demos_from_jsonl(corrupt), doctest::Contains("line 4"),
                       std::invalid_argument);
  CHECK_THROWS_AS(demos_from_jsonl(""), std::invalid_argument);
}
