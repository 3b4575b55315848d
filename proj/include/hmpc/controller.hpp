#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hmpc/rng.hpp"
#include "hmpc/space.hpp"

namespace hmpc {

/// Stop after each executed step with this probability. Activation lengths
/// are geometric with mean 1/prob.
struct PerStepProbability {
  double prob = 1.0;
};

/// Stop as soon as the condition holds (checked before every step).
struct StopPredicate {
  std::function<bool(const State&)> holds;
};

/// Stop after exactly this many steps.
struct MaxSteps {
  int steps = 1;
};

using TerminationModel = std::variant<PerStepProbability, StopPredicate, MaxSteps>;

/// How a quoted termination probability translates into the per-step stop
/// probability stored in PerStepProbability: under Terminate the quoted value
/// is the stop probability itself, under Continue it is the probability of
/// carrying on (stop probability 1 - value).
enum class BetaSemantics { Terminate, Continue };

double effective_stop_prob(double beta, BetaSemantics semantics);

enum class Corruption { LocalJitter, GlobalUniform };

/// Stochastic forward model of one controller's effect on the world.
/// nominal() is the noise-free transition; with probability noise_p a
/// predicted step is replaced by a corruption draw: LocalJitter draws
/// uniformly from the input state's immediate neighborhood (itself included,
/// clamped to the state set), GlobalUniform from the full state set.
struct DynamicsModel {
  std::function<State(const State&, Action)> nominal;
  double noise_p = 0.0;
  Corruption corruption = Corruption::LocalJitter;
  std::function<State(const State&, Rng&)> jitter;
  std::function<State(Rng&)> uniform_state;
  // States the prediction cannot leave (the task's absorbing end); optional.
  std::function<bool(const State&)> absorbing;
};

using ActionDistribution =
    std::function<std::vector<std::pair<Action, double>>(const State&)>;

/// The option-like controller tuple: control law, initiation set, termination
/// criterion and forward dynamics, all over the shared super-space. A policy
/// that works on a controller-local state is built by composing its
/// projection into `policy`; projections must be pure functions of the global
/// state (no hidden state), which keeps selection Markov in the super-space.
struct Controller {
  int id = 0;
  std::string name;
  std::function<bool(const State&)> initiation;
  std::function<Action(const State&, Rng&)> policy;
  TerminationModel termination;
  DynamicsModel dynamics;
  /// Exact per-state action probabilities, for controllers simple enough to
  /// declare them; enables closed-form evaluation. Null otherwise.
  ActionDistribution action_distribution;
};

/// Ordered controller set; listing order is the evaluation order, ids are
/// distinct and serve as the deterministic tie-break (lowest wins).
class ControllerLibrary {
 public:
  ControllerLibrary() = default;
  explicit ControllerLibrary(std::vector<Controller> controllers);

  const std::vector<Controller>& controllers() const { return controllers_; }
  std::size_t size() const { return controllers_.size(); }
  bool empty() const { return controllers_.empty(); }
  const Controller& at(std::size_t i) const { return controllers_[i]; }
  const Controller* find(int id) const;

  /// The sub-library holding only the given ids, in the original order.
  ControllerLibrary subset(const std::vector<int>& ids) const;

 private:
  std::vector<Controller> controllers_;
};

/// Value of the controller's initiation predicate at s.
bool applicable(const Controller& c, const State& s);

/// Sampled activation length. PerStepProbability yields a geometric draw
/// (one consumed draw), MaxSteps its fixed count; predicate criteria return
/// nullopt ("unbounded, evaluate inline during the walk").
std::optional<int> sample_activation_length(const TerminationModel& t, Rng& rng);

}  // namespace hmpc
