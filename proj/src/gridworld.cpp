#include "hmpc/gridworld.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <limits>
#include <memory>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace hmpc {

namespace {

constexpr Action kMoves[] = {Action::Left, Action::Right, Action::Up, Action::Down};

int dx_of(Action a) { return a == Action::Left ? -1 : a == Action::Right ? 1 : 0; }
int dy_of(Action a) { return a == Action::Up ? -1 : a == Action::Down ? 1 : 0; }

}  // namespace

GridSpec GridSpec::parse(const std::vector<std::string>& rows, int radius) {
  if (rows.empty()) throw std::invalid_argument("grid map: no rows");
  if (radius < 1) throw std::invalid_argument("grid map: radius < 1");
  GridSpec spec;
  spec.radius = radius;
  spec.height = static_cast<int>(rows.size());
  spec.width = static_cast<int>(rows[0].size());
  spec.walls.assign(static_cast<std::size_t>(spec.width) * spec.height, 0);
  int starts = 0, waypoints = 0, goals = 0;
  for (int y = 0; y < spec.height; ++y) {
    if (static_cast<int>(rows[y].size()) != spec.width)
      throw std::invalid_argument("grid map: ragged rows");
    for (int x = 0; x < spec.width; ++x) {
      switch (rows[y][x]) {
        case '#': spec.walls[static_cast<std::size_t>(y) * spec.width + x] = 1; break;
        case '.': break;
        case 'S': spec.start = State::cell(x, y); ++starts; break;
        case 'W': spec.waypoint = State::cell(x, y); ++waypoints; break;
        case 'G': spec.goal = State::cell(x, y); ++goals; break;
        default:
          throw std::invalid_argument(std::string("grid map: unknown cell '") +
                                      rows[y][x] + "'");
      }
    }
  }
  if (starts != 1 || waypoints != 1 || goals != 1)
    throw std::invalid_argument("grid map: exactly one S, one W and one G required");
  return spec;
}

std::vector<std::string> GridSpec::rows() const {
  std::vector<std::string> out(height, std::string(width, '.'));
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      if (walls[static_cast<std::size_t>(y) * width + x]) out[y][x] = '#';
  out[start.y()][start.x()] = 'S';
  out[waypoint.y()][waypoint.x()] = 'W';
  out[goal.y()][goal.x()] = 'G';
  return out;
}

GridSpec GridSpec::translated(int dx, int dy) const {
  GridSpec t = *this;
  t.start = State::cell(start.x() + dx, start.y() + dy);
  t.waypoint = State::cell(waypoint.x() + dx, waypoint.y() + dy);
  t.goal = State::cell(goal.x() + dx, goal.y() + dy);
  // Walls move with the layout; the bounding box grows to fit.
  t.width = width + std::abs(dx);
  t.height = height + std::abs(dy);
  t.walls.assign(static_cast<std::size_t>(t.width) * t.height, 1);
  const int ox = std::max(dx, 0);
  const int oy = std::max(dy, 0);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      t.walls[static_cast<std::size_t>(y + oy) * t.width + (x + ox)] =
          walls[static_cast<std::size_t>(y) * width + x];
  if (dx < 0 || dy < 0)
    throw std::invalid_argument("translated: only non-negative shifts supported");
  return t;
}

GridStep grid_step(const GridSpec& spec, const State& cell, Action move) {
  if (spec.wall(cell.x(), cell.y()))
    throw std::invalid_argument("grid_step: state " + cell.str() + " is a wall cell");
  const int nx = cell.x() + dx_of(move);
  const int ny = cell.y() + dy_of(move);
  const State next = spec.wall(nx, ny) ? cell : State::cell(nx, ny);
  return {next, next == spec.goal};
}

bool grid_path_exists(const GridSpec& spec, const State& from, const State& to) {
  if (spec.wall(from.x(), from.y()) || spec.wall(to.x(), to.y())) return false;
  std::unordered_set<State, StateHash> seen{from};
  std::deque<State> frontier{from};
  while (!frontier.empty()) {
    const State s = frontier.front();
    frontier.pop_front();
    if (s == to) return true;
    for (Action a : kMoves) {
      const int nx = s.x() + dx_of(a);
      const int ny = s.y() + dy_of(a);
      if (spec.wall(nx, ny)) continue;
      if (seen.insert(State::cell(nx, ny)).second)
        frontier.push_back(State::cell(nx, ny));
    }
  }
  return false;
}

GridEnv::GridEnv(GridSpec spec) : spec_(std::move(spec)) {
  for (const State* s : {&spec_.start, &spec_.waypoint, &spec_.goal})
    if (spec_.wall(s->x(), s->y()))
      throw std::invalid_argument("grid: start/waypoint/goal on a wall");
  if (spec_.start == spec_.waypoint || spec_.start == spec_.goal ||
      spec_.waypoint == spec_.goal)
    throw std::invalid_argument("grid: start, waypoint and goal must be distinct");
  if (!grid_path_exists(spec_, spec_.start, spec_.waypoint) ||
      !grid_path_exists(spec_, spec_.waypoint, spec_.goal))
    throw std::invalid_argument("spec violates path precondition");
}

State GridEnv::step(const State& s, Action a) const {
  return grid_step(spec_, s, a).next;
}

bool GridEnv::contains(const State& s) const {
  return s.is_cell() && !spec_.wall(s.x(), s.y());
}

std::vector<State> GridEnv::state_set() const {
  std::vector<State> cells;
  for (int y = 0; y < spec_.height; ++y)
    for (int x = 0; x < spec_.width; ++x)
      if (!spec_.wall(x, y)) cells.push_back(State::cell(x, y));
  return cells;
}

LocalWindow extract_window(const GridSpec& spec, const State& cell) {
  LocalWindow w;
  w.radius = spec.radius;
  const int side = 2 * spec.radius + 1;
  w.blocked.assign(static_cast<std::size_t>(side) * side, 0);
  for (int dy = -spec.radius; dy <= spec.radius; ++dy)
    for (int dx = -spec.radius; dx <= spec.radius; ++dx)
      w.blocked[static_cast<std::size_t>(dy + spec.radius) * side +
                (dx + spec.radius)] = spec.wall(cell.x() + dx, cell.y() + dy) ? 1 : 0;
  const int gdx = spec.goal.x() - cell.x();
  const int gdy = spec.goal.y() - cell.y();
  if (std::abs(gdx) <= spec.radius && std::abs(gdy) <= spec.radius) {
    w.goal_visible = true;
    w.goal_dx = gdx;
    w.goal_dy = gdy;
  }
  return w;
}

std::optional<Action> window_greedy_move(const LocalWindow& window) {
  if (!window.goal_visible) return std::nullopt;
  if (window.goal_dx == 0 && window.goal_dy == 0) return std::nullopt;
  std::optional<Action> best;
  int best_dist = 0;
  for (Action a : kMoves) {
    const int mx = dx_of(a);
    const int my = dy_of(a);
    if (window.blocked_at(mx, my)) continue;
    const int dist = std::abs(window.goal_dx - mx) + std::abs(window.goal_dy - my);
    if (!best || dist < best_dist) {
      best = a;
      best_dist = dist;
    }
  }
  return best;
}

DynamicsModel make_grid_dynamics(const GridSpec& spec, double noise_p,
                                 Corruption corruption) {
  if (noise_p < 0.0 || noise_p > 1.0)
    throw std::invalid_argument("dynamics noise outside [0,1]");
  DynamicsModel m;
  m.noise_p = noise_p;
  m.corruption = corruption;
  m.nominal = [spec](const State& s, Action a) { return grid_step(spec, s, a).next; };
  m.jitter = [spec](const State& s, Rng& rng) {
    // The cell itself plus its open 4-neighbors, in move order.
    State options[5] = {s};
    std::size_t n = 1;
    for (Action a : kMoves) {
      const int nx = s.x() + dx_of(a);
      const int ny = s.y() + dy_of(a);
      if (!spec.wall(nx, ny)) options[n++] = State::cell(nx, ny);
    }
    return options[rng.uniform_index(n)];
  };
  auto open_cells = std::make_shared<std::vector<State>>();
  for (int y = 0; y < spec.height; ++y)
    for (int x = 0; x < spec.width; ++x)
      if (!spec.wall(x, y)) open_cells->push_back(State::cell(x, y));
  m.uniform_state = [open_cells](Rng& rng) {
    return (*open_cells)[rng.uniform_index(open_cells->size())];
  };
  m.absorbing = [goal = spec.goal](const State& s) { return s == goal; };
  return m;
}

namespace {

// Greedy legal move that shrinks the distance to `target` the most; move
// order breaks ties.
Action greedy_toward(const GridSpec& spec, const State& s, const State& target) {
  Action best = Action::Up;
  int best_dist = std::numeric_limits<int>::max();
  for (Action a : kMoves) {
    const int nx = s.x() + dx_of(a);
    const int ny = s.y() + dy_of(a);
    if (spec.wall(nx, ny)) continue;
    const int dist = state_distance(State::cell(nx, ny), target);
    if (dist < best_dist) {
      best = a;
      best_dist = dist;
    }
  }
  return best;
}

}  // namespace

ControllerLibrary gridworld_library(const GridSpec& spec, double dynamics_noise,
                                    BetaSemantics semantics, Corruption corruption) {
  const auto dynamics = make_grid_dynamics(spec, dynamics_noise, corruption);

  Controller navigator;
  navigator.id = 1;
  navigator.name = "waypoint-navigator";
  navigator.initiation = [](const State&) { return true; };
  navigator.policy = [spec](const State& s, Rng&) {
    return greedy_toward(spec, s, spec.waypoint);
  };
  navigator.action_distribution = [spec](const State& s) {
    return std::vector<std::pair<Action, double>>{
        {greedy_toward(spec, s, spec.waypoint), 1.0}};
  };
  navigator.termination = StopPredicate{
      [waypoint = spec.waypoint](const State& s) { return s == waypoint; }};
  navigator.dynamics = dynamics;

  Controller local;
  local.id = 2;
  local.name = "local-greedy";
  // Everything below sees the world only through the window projection.
  local.initiation = [spec](const State& s) {
    return extract_window(spec, s).goal_visible;
  };
  local.policy = [spec](const State& s, Rng&) {
    const auto move = window_greedy_move(extract_window(spec, s));
    return move.value_or(Action::Up);
  };
  local.action_distribution = [spec](const State& s) {
    const auto move = window_greedy_move(extract_window(spec, s));
    return std::vector<std::pair<Action, double>>{{move.value_or(Action::Up), 1.0}};
  };
  local.termination =
      StopPredicate{[goal = spec.goal](const State& s) { return s == goal; }};
  local.dynamics = dynamics;

  Controller wander;
  wander.id = 3;
  wander.name = "random-walk";
  wander.initiation = [](const State&) { return true; };
  wander.policy = [](const State&, Rng& rng) {
    return kMoves[rng.uniform_index(4)];
  };
  wander.action_distribution = [](const State&) {
    return std::vector<std::pair<Action, double>>{{Action::Left, 0.25},
                                                  {Action::Right, 0.25},
                                                  {Action::Up, 0.25},
                                                  {Action::Down, 0.25}};
  };
  wander.termination = PerStepProbability{effective_stop_prob(0.5, semantics)};
  wander.dynamics = dynamics;

  return ControllerLibrary({navigator, local, wander});
}

namespace {

std::vector<State> bfs_path(const GridSpec& spec, const State& from, const State& to) {
  std::unordered_map<State, State, StateHash> parent;
  std::deque<State> frontier{from};
  parent.emplace(from, from);
  while (!frontier.empty()) {
    const State s = frontier.front();
    frontier.pop_front();
    if (s == to) break;
    for (Action a : kMoves) {
      const int nx = s.x() + dx_of(a);
      const int ny = s.y() + dy_of(a);
      if (spec.wall(nx, ny)) continue;
      const State next = State::cell(nx, ny);
      if (parent.emplace(next, s).second) frontier.push_back(next);
    }
  }
  if (!parent.count(to))
    throw std::invalid_argument("grid: no path " + from.str() + " -> " + to.str());
  std::vector<State> path{to};
  while (path.back() != from) path.push_back(parent.at(path.back()));
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::vector<Demonstration> generate_grid_demos(const GridSpec& spec, int count,
                                               double dwell_prob, Rng& rng) {
  if (count < 1) throw std::invalid_argument("generate_grid_demos: count < 1");
  const auto leg1 = bfs_path(spec, spec.start, spec.waypoint);
  auto leg2 = bfs_path(spec, spec.waypoint, spec.goal);
  std::vector<State> route = leg1;
  route.insert(route.end(), leg2.begin() + 1, leg2.end());

  std::vector<Demonstration> demos;
  demos.reserve(count);
  for (int id = 0; id < count; ++id) {
    Demonstration d;
    d.id = id;
    for (std::size_t i = 0; i < route.size(); ++i) {
      d.states.push_back(route[i]);
      const bool interior = i > 0 && i + 1 < route.size();
      while (interior && dwell_prob > 0.0 && rng.bernoulli(dwell_prob))
        d.states.push_back(route[i]);
    }
    demos.push_back(std::move(d));
  }
  return demos;
}

}  // namespace hmpc
