#include "hmpc/space.hpp"

#include <cstdlib>
#include <stdexcept>

namespace hmpc {

const char* to_string(Action a) {
  switch (a) {
    case Action::Left: return "left";
    case Action::Right: return "right";
    case Action::Up: return "up";
    case Action::Down: return "down";
  }
  return "?";
}

Action action_from_string(const std::string& s) {
  if (s == "left") return Action::Left;
  if (s == "right") return Action::Right;
  if (s == "up") return Action::Up;
  if (s == "down") return Action::Down;
  throw std::invalid_argument("unknown action: " + s);
}

std::string State::str() const {
  if (cell_) return std::to_string(x_) + "," + std::to_string(y_);
  return std::to_string(x_);
}

State State::parse(const std::string& text) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) return State::chain(std::stoi(text));
    return State::cell(std::stoi(text.substr(0, comma)),
                       std::stoi(text.substr(comma + 1)));
  } catch (const std::exception&) {
    throw std::invalid_argument("unparsable state: '" + text + "'");
  }
}

int state_distance(const State& a, const State& b) {
  return std::abs(a.x() - b.x()) + std::abs(a.y() - b.y());
}

}  // namespace hmpc
