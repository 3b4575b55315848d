#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace hmpc {

enum class Action : std::uint8_t { Left = 0, Right = 1, Up = 2, Down = 3 };

const char* to_string(Action a);
Action action_from_string(const std::string& s);

/// An element of the shared super-space. Chain states carry a single index,
/// grid states a cell coordinate pair. Equality, ordering, hashing and the
/// text form all agree: two states serialize identically iff they compare
/// equal.
class State {
 public:
  State() = default;

  static State chain(int index) { return State(index, 0, false); }
  static State cell(int x, int y) { return State(x, y, true); }

  bool is_cell() const { return cell_; }
  int index() const { return x_; }
  int x() const { return x_; }
  int y() const { return y_; }

  friend bool operator==(const State&, const State&) = default;
  friend auto operator<=>(const State&, const State&) = default;

  std::string str() const;
  static State parse(const std::string& text);

 private:
  State(int x, int y, bool cell) : x_(x), y_(y), cell_(cell) {}

  std::int32_t x_ = 0;
  std::int32_t y_ = 0;
  bool cell_ = false;
};

struct StateHash {
  std::size_t operator()(const State& s) const {
    std::uint64_t k = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.x())) << 32) |
                      static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.y()));
    k ^= s.is_cell() ? 0x9e3779b97f4a7c15ULL : 0;
    k ^= (k >> 33);
    k *= 0xff51afd7ed558ccdULL;
    k ^= (k >> 33);
    return static_cast<std::size_t>(k);
  }
};

/// Declared state metric: |dx| + |dy| (chain states have dy = 0).
int state_distance(const State& a, const State& b);

/// True-environment contract shared by the planner, the scorer pipeline and
/// the experiment harness. Transitions are deterministic; all stochasticity
/// lives in controller termination and in the dynamics models.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual std::string name() const = 0;
  virtual State start() const = 0;
  virtual State step(const State& s, Action a) const = 0;
  virtual bool goal_reached(const State& s) const = 0;
  virtual bool contains(const State& s) const = 0;
  virtual std::vector<Action> action_set() const = 0;
  virtual std::vector<State> state_set() const = 0;
};

}  // namespace hmpc
