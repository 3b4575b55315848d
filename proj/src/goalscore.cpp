#include "hmpc/goalscore.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace hmpc {

std::string demos_to_jsonl(const std::vector<Demonstration>& demos) {
  std::string out;
  for (const auto& d : demos) {
    nlohmann::json states = nlohmann::json::array();
    for (const auto& s : d.states) states.push_back(s.str());
    out += nlohmann::json{{"id", d.id}, {"states", states}}.dump();
    out += '\n';
  }
  return out;
}

std::vector<Demonstration> demos_from_jsonl(const std::string& text) {
  std::vector<Demonstration> demos;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto doc = nlohmann::json::parse(line);
      Demonstration d;
      d.id = doc.at("id").get<int>();
      for (const auto& s : doc.at("states"))
        d.states.push_back(State::parse(s.get<std::string>()));
      if (d.states.size() < 2) throw std::invalid_argument("fewer than 2 states");
      demos.push_back(std::move(d));
    } catch (const std::exception& e) {
      throw std::invalid_argument("demonstrations file, line " +
                                  std::to_string(line_no) + ": " + e.what());
    }
  }
  if (demos.empty())
    throw std::invalid_argument("demonstrations file, line 0: no demonstrations");
  return demos;
}

double ProgressDistribution::point() const {
  double acc = 0.0;
  for (const auto& c : components) acc += c.weight * c.mean;
  return acc;
}

GoalScorer GoalScorer::fit(const std::vector<Demonstration>& demos) {
  if (demos.empty()) throw std::invalid_argument("fit: no demonstrations");
  for (const auto& d : demos) {
    if (d.states.size() < 2)
      throw std::invalid_argument("fit: demonstration " + std::to_string(d.id) +
                                  " has fewer than 2 states");
  }

  // Per state, per demo: the normalized time labels observed there.
  std::map<State, std::vector<std::vector<double>>> labels;
  for (std::size_t di = 0; di < demos.size(); ++di) {
    const auto& d = demos[di];
    const double horizon = static_cast<double>(d.states.size() - 1);
    for (std::size_t t = 0; t < d.states.size(); ++t) {
      auto& per_demo = labels[d.states[t]];
      per_demo.resize(demos.size());
      per_demo[di].push_back(static_cast<double>(t) / horizon);
    }
  }

  GoalScorer g;
  for (const auto& [state, per_demo] : labels) {
    ProgressDistribution mix;
    double total = 0.0;
    for (const auto& demo_labels : per_demo) total += static_cast<double>(demo_labels.size());
    for (const auto& demo_labels : per_demo) {
      if (demo_labels.empty()) continue;
      const double n = static_cast<double>(demo_labels.size());
      double mean = 0.0;
      for (double v : demo_labels) mean += v;
      mean /= n;
      double var = 0.0;
      for (double v : demo_labels) var += (v - mean) * (v - mean);
      var /= n;
      mix.components.push_back({mean, std::sqrt(var), n / total});
    }
    g.keys_.push_back(state);
    g.mixtures_.push_back(std::move(mix));
    g.summaries_.push_back(g.mixtures_.back().point());
  }
  g.rebuild_index();
  return g;
}

void GoalScorer::rebuild_index() {
  index_.clear();
  index_.reserve(keys_.size());
  for (std::size_t i = 0; i < keys_.size(); ++i) index_.emplace(keys_[i], i);
}

std::size_t GoalScorer::resolve(const State& s) const {
  if (keys_.empty()) throw std::logic_error("scorer not fitted");
  auto it = index_.find(s);
  if (it != index_.end()) return it->second;
  // Nearest known key; keys_ is ascending, so the first minimum is the lower key.
  std::size_t best = 0;
  int best_d = state_distance(keys_[0], s);
  for (std::size_t i = 1; i < keys_.size(); ++i) {
    const int d = state_distance(keys_[i], s);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

const State& GoalScorer::nearest_key(const State& s) const { return keys_[resolve(s)]; }

const ProgressDistribution& GoalScorer::mixture_at(const State& s) const {
  return mixtures_[resolve(s)];
}

ProgressDistribution GoalScorer::score(const State& s, Rng& rng) const {
  if (noise_prob_ > 0.0 && rng.bernoulli(noise_prob_)) {
    if (noise_kind_ == GoalNoiseKind::StateConfusion)
      return mixtures_[rng.uniform_index(keys_.size())];
    return ProgressDistribution{{{rng.uniform01(), 0.0, 1.0}}};
  }
  return mixtures_[resolve(s)];
}

double GoalScorer::sample_point(const State& s, Rng& rng) const {
  if (noise_prob_ > 0.0 && rng.bernoulli(noise_prob_)) {
    if (noise_kind_ == GoalNoiseKind::StateConfusion)
      return summaries_[rng.uniform_index(keys_.size())];
    return rng.uniform01();
  }
  return summaries_[resolve(s)];
}

double GoalScorer::point_at(const State& s) const { return summaries_[resolve(s)]; }

GoalScorer GoalScorer::with_noise(double p, GoalNoiseKind kind) const {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("with_noise: p outside [0,1]");
  GoalScorer g = *this;
  g.noise_prob_ = p;
  g.noise_kind_ = kind;
  return g;
}

MonotonicityReport GoalScorer::monotonicity_report(const Demonstration& demo) const {
  MonotonicityReport report;
  report.trace.reserve(demo.states.size());
  for (std::size_t t = 0; t < demo.states.size(); ++t)
    report.trace.emplace_back(static_cast<int>(t), point_at(demo.states[t]));
  for (std::size_t t = 1; t < report.trace.size(); ++t)
    if (report.trace[t].second < report.trace[t - 1].second) ++report.strict_decreases;
  return report;
}

nlohmann::json GoalScorer::to_json() const {
  nlohmann::json keys = nlohmann::json::array();
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& c : mixtures_[i].components)
      comps.push_back({{"mean", c.mean}, {"spread", c.spread}, {"weight", c.weight}});
    keys.push_back({{"state", keys_[i].str()}, {"components", comps}});
  }
  return {{"keys", keys},
          {"fallback", "nearest-state-distance-lowest-key"},
          {"noise",
           {{"prob", noise_prob_},
            {"kind", noise_kind_ == GoalNoiseKind::StateConfusion ? "state" : "value"}}}};
}

GoalScorer GoalScorer::from_json(const nlohmann::json& doc) {
  GoalScorer g;
  for (const auto& entry : doc.at("keys")) {
    ProgressDistribution mix;
    for (const auto& c : entry.at("components"))
      mix.components.push_back({c.at("mean").get<double>(), c.at("spread").get<double>(),
                                c.at("weight").get<double>()});
    g.keys_.push_back(State::parse(entry.at("state").get<std::string>()));
    g.summaries_.push_back(mix.point());
    g.mixtures_.push_back(std::move(mix));
  }
  if (!std::is_sorted(g.keys_.begin(), g.keys_.end()))
    throw std::invalid_argument("scorer document: keys not sorted");
  if (doc.contains("noise")) {
    g.noise_prob_ = doc["noise"].at("prob").get<double>();
    const auto kind = doc["noise"].at("kind").get<std::string>();
    if (kind == "state")
      g.noise_kind_ = GoalNoiseKind::StateConfusion;
    else if (kind == "value")
      g.noise_kind_ = GoalNoiseKind::ValueNoise;
    else
      throw std::invalid_argument("scorer document: unknown noise kind '" + kind + "'");
  }
  g.rebuild_index();
  return g;
}

}  // namespace hmpc
