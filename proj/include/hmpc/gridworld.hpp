#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hmpc/controller.hpp"
#include "hmpc/goalscore.hpp"
#include "hmpc/space.hpp"

namespace hmpc {

/// Rectangular cell grid parsed from an ASCII map: '#' wall, 'S' start,
/// 'W' waypoint (the hand-off point), 'G' goal, '.' open. Start, waypoint and
/// goal are distinct non-wall cells and a start -> waypoint -> goal path must
/// exist.
struct GridSpec {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> walls;  // row-major, 1 = wall
  State start;
  State waypoint;
  State goal;
  int radius = 1;  // local-observation radius (1 = 3x3 window)

  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width && y >= 0 && y < height;
  }
  bool wall(int x, int y) const {
    return !in_bounds(x, y) || walls[static_cast<std::size_t>(y) * width + x] != 0;
  }

  static GridSpec parse(const std::vector<std::string>& rows, int radius = 1);
  std::vector<std::string> rows() const;

  /// The same layout shifted by (dx, dy); used to check that local
  /// controllers cannot depend on absolute coordinates.
  GridSpec translated(int dx, int dy) const;
};

bool grid_path_exists(const GridSpec& spec, const State& from, const State& to);

struct GridStep {
  State next;
  bool done = false;
};

/// Moves one cell in the given direction unless a wall or the boundary blocks
/// it (then stays); done once the goal cell is reached.
GridStep grid_step(const GridSpec& spec, const State& cell, Action move);

class GridEnv : public Environment {
 public:
  explicit GridEnv(GridSpec spec);

  std::string name() const override { return "gridworld"; }
  State start() const override { return spec_.start; }
  State step(const State& s, Action a) const override;
  bool goal_reached(const State& s) const override { return s == spec_.goal; }
  bool contains(const State& s) const override;
  std::vector<Action> action_set() const override {
    return {Action::Left, Action::Right, Action::Up, Action::Down};
  }
  std::vector<State> state_set() const override;

  const GridSpec& spec() const { return spec_; }

 private:
  GridSpec spec_;
};

/// What the local controller sees: the (2r+1)^2 occupancy patch centered on
/// the agent (out-of-bounds counts as blocked) plus the goal offset when the
/// goal lies inside the patch. Deliberately contains no absolute coordinates.
struct LocalWindow {
  int radius = 1;
  std::vector<std::uint8_t> blocked;  // row-major over the patch
  bool goal_visible = false;
  int goal_dx = 0;
  int goal_dy = 0;

  bool operator==(const LocalWindow&) const = default;

  bool blocked_at(int dx, int dy) const {
    const int side = 2 * radius + 1;
    return blocked[static_cast<std::size_t>(dy + radius) * side + (dx + radius)] != 0;
  }
};

LocalWindow extract_window(const GridSpec& spec, const State& cell);

/// Greedy step toward the visible goal, picked among unblocked moves inside
/// the window; nullopt when the goal is not visible or already reached.
std::optional<Action> window_greedy_move(const LocalWindow& window);

DynamicsModel make_grid_dynamics(const GridSpec& spec, double noise_p,
                                 Corruption corruption = Corruption::LocalJitter);

/// Three controllers over different local state spaces:
///   1 waypoint-navigator: global coordinates, greedy descent to the fixed
///     waypoint, startable anywhere, terminates at the waypoint;
///   2 local-greedy: sees only its local window, startable only when the
///     goal is visible there, terminates at the goal;
///   3 random-walk: anywhere, termination probability 0.5.
/// With the default map no single controller completes the task.
ControllerLibrary gridworld_library(const GridSpec& spec, double dynamics_noise = 0.0,
                                    BetaSemantics semantics = BetaSemantics::Terminate,
                                    Corruption corruption = Corruption::LocalJitter);

/// Shortest-path walks start -> waypoint -> goal (breadth-first, deterministic
/// tie-break) with optional dwell repeats at interior states.
std::vector<Demonstration> generate_grid_demos(const GridSpec& spec, int count,
                                               double dwell_prob, Rng& rng);

}  // namespace hmpc
