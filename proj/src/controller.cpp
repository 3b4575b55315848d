#include "hmpc/controller.hpp"

#include <stdexcept>
#include <unordered_set>

namespace hmpc {

double effective_stop_prob(double beta, BetaSemantics semantics) {
  if (beta < 0.0 || beta > 1.0)
    throw std::invalid_argument("termination probability outside [0,1]");
  return semantics == BetaSemantics::Terminate ? beta : 1.0 - beta;
}

ControllerLibrary::ControllerLibrary(std::vector<Controller> controllers)
    : controllers_(std::move(controllers)) {
  std::unordered_set<int> ids;
  for (const auto& c : controllers_) {
    if (c.id < 0) throw std::invalid_argument("controller id must be non-negative");
    if (!ids.insert(c.id).second)
      throw std::invalid_argument("duplicate controller id " + std::to_string(c.id));
  }
}

const Controller* ControllerLibrary::find(int id) const {
  for (const auto& c : controllers_)
    if (c.id == id) return &c;
  return nullptr;
}

ControllerLibrary ControllerLibrary::subset(const std::vector<int>& ids) const {
  std::vector<Controller> picked;
  for (const auto& c : controllers_)
    for (int id : ids)
      if (c.id == id) picked.push_back(c);
  return ControllerLibrary(std::move(picked));
}

bool applicable(const Controller& c, const State& s) { return c.initiation(s); }

std::optional<int> sample_activation_length(const TerminationModel& t, Rng& rng) {
  if (const auto* per_step = std::get_if<PerStepProbability>(&t)) {
    if (!(per_step->prob > 0.0))
      throw std::invalid_argument("non-terminating controller: stop probability is 0");
    return rng.geometric(per_step->prob);
  }
  if (const auto* fixed = std::get_if<MaxSteps>(&t)) return fixed->steps;
  return std::nullopt;
}

}  // namespace hmpc
