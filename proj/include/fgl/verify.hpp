#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "fgl/engine.hpp"
#include "fgl/policy.hpp"
#include "fgl/solver.hpp"

namespace fgl {

struct Counterexample {
  /// Replayable move list from the initial position.
  std::vector<EdgeId> moves;
  /// OPPONENT_WINS, ILLEGAL_MOVE or POLICY_ERROR.
  std::string reason;
  std::string detail;
};

struct VerificationReport {
  bool verified = false;
  std::uint64_t lines_explored = 0;
  std::optional<Counterexample> counterexample;
  std::size_t max_depth = 0;
  std::uint64_t states_visited = 0;
};

namespace detail {

// Policies may look at the previous move, so it is part of the key.
struct PositionKey {
  VertexId token;
  EdgeMask removed;
  std::optional<EdgeId> last_move;
  friend bool operator==(const PositionKey&, const PositionKey&) = default;
};

struct PositionKeyHash {
  std::size_t operator()(const PositionKey& k) const noexcept {
    const std::uint64_t last = k.last_move ? *k.last_move + 1 : 0;
    return static_cast<std::size_t>(k.removed.hash() ^ (std::uint64_t{k.token} * 0x9e3779b97f4a7c15ULL) ^
                                    (last * 0xc2b2ae3d27d4eb4fULL));
  }
};

class PolicyVerifier {
 public:
  PolicyVerifier(const Policy& policy, Player player, const SearchLimits& limits)
      : policy_(policy), player_(player), limits_(limits), started_(std::chrono::steady_clock::now()) {}

  VerificationReport run(const GameState& initial) {
    report_.verified = visit(initial);
    return report_;
  }

 private:
  bool visit(const GameState& st) {
    report_.max_depth = std::max(report_.max_depth, path_.size());
    if (auto w = decided_winner(st)) {
      ++report_.lines_explored;
      if (*w == player_) return true;
      fail("OPPONENT_WINS", st.winner ? "opponent ended the game" : "player has no legal move");
      return false;
    }
    const PositionKey key{st.token, st.removed, st.last_move};
    if (proven_.contains(key)) return true;
    tick();

    bool ok = true;
    if (st.mover == player_) {
      EdgeId e = 0;
      try {
        e = policy_(st);
      } catch (const std::exception& ex) {
        fail("POLICY_ERROR", ex.what());
        return false;
      }
      if (e >= st.board->edge_count() || !st.available().test(e)) {
        fail("ILLEGAL_MOVE", "policy chose edge " + std::to_string(e));
        return false;
      }
      ok = descend(st, e);
    } else {
      for (EdgeId e : legal_moves(st)) {
        if (!descend(st, e)) {
          ok = false;
          break;
        }
      }
    }
    if (ok && proven_.size() < limits_.table_capacity) proven_.insert(key);
    return ok;
  }

  bool descend(const GameState& st, EdgeId e) {
    path_.push_back(e);
    bool ok = visit(apply_move(st, e).first);
    if (ok) path_.pop_back();
    return ok;
  }

  void fail(const char* reason, std::string detail) {
    report_.counterexample = Counterexample{path_, reason, std::move(detail)};
  }

  void tick() {
    ++report_.states_visited;
    if (report_.states_visited > limits_.max_states) {
      throw BudgetExceeded("verification exceeded " + std::to_string(limits_.max_states) + " states",
                           SearchStats{report_.states_visited, 0});
    }
    if ((report_.states_visited & 0xfff) == 0) {
      std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started_;
      if (elapsed.count() > limits_.max_seconds) {
        throw BudgetExceeded("verification exceeded " + std::to_string(limits_.max_seconds) + " s",
                             SearchStats{report_.states_visited, 0});
      }
    }
  }

  const Policy& policy_;
  Player player_;
  SearchLimits limits_;
  std::chrono::steady_clock::time_point started_;
  std::vector<EdgeId> path_;
  std::unordered_set<PositionKey, PositionKeyHash> proven_;
  VerificationReport report_;
};

}  // namespace detail

/// Plays `policy` for `player` against every possible opponent line from
/// `initial`. Branching happens only at opponent nodes; positions already
/// proven are not re-explored. Throws BudgetExceeded past the limits.
inline VerificationReport verify_policy(const GameState& initial, const Policy& policy, Player player,
                                        const SearchLimits& limits = {}) {
  if (policy.owner != player) {
    throw std::invalid_argument("policy '" + policy.label + "' belongs to " + std::string(to_string(policy.owner)));
  }
  limits.validate();
  return detail::PolicyVerifier(policy, player, limits).run(initial);
}

inline VerificationReport verify_policy(const Graph& g, VertexId s, Variant variant, const Policy& policy,
                                        Player player, const SearchLimits& limits = {}) {
  return verify_policy(initial_state(g, s, variant), policy, player, limits);
}

}  // namespace fgl
