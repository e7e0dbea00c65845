#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

#include "fgl/engine.hpp"

namespace fgl {

/// Raised by a policy asked to move in a position its rule does not cover.
class PolicyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A deterministic move rule for one player.
struct Policy {
  Player owner = Player::Alice;
  std::string label;
  std::function<EdgeId(const GameState&)> choose;

  EdgeId operator()(const GameState& st) const { return choose(st); }
};

}  // namespace fgl
