#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hmpc/rng.hpp"
#include "hmpc/space.hpp"

namespace hmpc {

/// A full-task state trajectory with implicit timestamps 0..T. Temporal
/// position is the only supervision the scorer gets.
struct Demonstration {
  int id = 0;
  std::vector<State> states;
};

/// One JSON object per line: {"id": ..., "states": ["1", "2", ...]} with
/// states in the environment's text form.
std::string demos_to_jsonl(const std::vector<Demonstration>& demos);

/// Parse errors carry the 1-based line number.
std::vector<Demonstration> demos_from_jsonl(const std::string& text);

struct ProgressComponent {
  double mean = 0.0;    // in [0, 1]
  double spread = 0.0;  // stdev of the labels behind this component
  double weight = 0.0;
};

/// Distribution over task progress g in [0, 1]; one component per
/// demonstration that visited the state, so differing demo lengths show up
/// as separate modes.
struct ProgressDistribution {
  std::vector<ProgressComponent> components;

  /// Weighted mixture mean; the point summary used for selection.
  double point() const;
};

enum class GoalNoiseKind { StateConfusion, ValueNoise };

struct MonotonicityReport {
  std::vector<std::pair<int, double>> trace;  // (time, noise-free mean score)
  int strict_decreases = 0;
};

/// Goal-progress estimator fitted from demonstrations. A state seen at time t
/// of a length-T+1 demo gets label t/T; each distinct state stores one
/// mixture component per demo that visited it. Unseen states fall back to the
/// nearest known state under the declared metric (ties to the lower key).
/// An optional noise wrapper corrupts score calls with probability noise_prob:
/// either substituting a uniformly drawn known state's distribution
/// (state confusion) or a uniform random value (value noise).
class GoalScorer {
 public:
  GoalScorer() = default;

  static GoalScorer fit(const std::vector<Demonstration>& demos);

  /// The stored (or fallback) mixture for s, after the noise decision.
  /// Consumes randomness only when the noise wrapper is active.
  ProgressDistribution score(const State& s, Rng& rng) const;

  /// Point summary of score(); same noise semantics, no mixture built.
  double sample_point(const State& s, Rng& rng) const;

  /// Noise-free point summary (fallback rule applied).
  double point_at(const State& s) const;

  /// Returns a copy whose score calls are corrupted with probability p.
  GoalScorer with_noise(double p, GoalNoiseKind kind = GoalNoiseKind::StateConfusion) const;

  double noise_prob() const { return noise_prob_; }
  GoalNoiseKind noise_kind() const { return noise_kind_; }

  MonotonicityReport monotonicity_report(const Demonstration& demo) const;

  bool known(const State& s) const { return index_.count(s) > 0; }
  const std::vector<State>& keys() const { return keys_; }
  const State& nearest_key(const State& s) const;
  const ProgressDistribution& mixture_at(const State& s) const;

  nlohmann::json to_json() const;
  static GoalScorer from_json(const nlohmann::json& doc);

 private:
  std::vector<State> keys_;  // ascending; positions index the two vectors below
  std::vector<ProgressDistribution> mixtures_;
  std::vector<double> summaries_;
  std::unordered_map<State, std::size_t, StateHash> index_;
  double noise_prob_ = 0.0;
  GoalNoiseKind noise_kind_ = GoalNoiseKind::StateConfusion;

  std::size_t resolve(const State& s) const;
  void rebuild_index();
};

}  // namespace hmpc
