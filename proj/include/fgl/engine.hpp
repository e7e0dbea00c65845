#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "fgl/edge_mask.hpp"
#include "fgl/graph.hpp"

namespace fgl {

enum class Variant { Feedback, EdgeGeoUndirected, EdgeGeoDirected };
enum class Player { Alice, Bob };

/// Result of a single move, from the point of view of the player who made it.
enum class MoveOutcome { Ongoing, WinBackToStart, WinIsolation };

inline constexpr Player opponent(Player p) { return p == Player::Alice ? Player::Bob : Player::Alice; }
inline constexpr bool is_win(MoveOutcome o) { return o != MoveOutcome::Ongoing; }

inline std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::Feedback: return "feedback";
    case Variant::EdgeGeoUndirected: return "edge-geo";
    case Variant::EdgeGeoDirected: return "directed-edge-geo";
  }
  return "?";
}
inline std::string_view to_string(Player p) { return p == Player::Alice ? "ALICE" : "BOB"; }
inline std::string_view to_string(MoveOutcome o) {
  switch (o) {
    case MoveOutcome::Ongoing: return "ONGOING";
    case MoveOutcome::WinBackToStart: return "BACK_TO_START";
    case MoveOutcome::WinIsolation: return "ISOLATION";
  }
  return "?";
}

inline Variant parse_variant(std::string_view s) {
  if (s == "feedback") return Variant::Feedback;
  if (s == "edge-geo" || s == "ueg") return Variant::EdgeGeoUndirected;
  if (s == "directed-edge-geo" || s == "deg") return Variant::EdgeGeoDirected;
  throw std::invalid_argument("unknown variant '" + std::string(s) + "'");
}

class EngineError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Move structure shared by every position of a game: for each vertex, the
/// mask of edges (or out-arcs) along which the token may leave it.
class Board {
 public:
  Board(std::size_t vertex_count, std::vector<std::pair<VertexId, VertexId>> arcs, bool directed)
      : n_(vertex_count), arcs_(std::move(arcs)), directed_(directed), exits_(vertex_count) {
    if (arcs_.size() > EdgeMask::kCapacity) {
      throw EngineError("graph has " + std::to_string(arcs_.size()) + " edges; the engine supports at most " +
                        std::to_string(EdgeMask::kCapacity));
    }
    for (std::size_t e = 0; e < arcs_.size(); ++e) {
      auto [a, b] = arcs_[e];
      if (a >= n_ || b >= n_) throw EngineError("edge endpoint out of range");
      if (a == b) throw EngineError("self-loop in game board");
      exits_[a].set(e);
      if (!directed_) exits_[b].set(e);
    }
  }

  static std::shared_ptr<const Board> of(const Graph& g) {
    return std::make_shared<const Board>(g.vertex_count(), g.edges(), false);
  }

  [[nodiscard]] std::size_t vertex_count() const { return n_; }
  [[nodiscard]] std::size_t edge_count() const { return arcs_.size(); }
  [[nodiscard]] bool directed() const { return directed_; }
  [[nodiscard]] const EdgeMask& exits(VertexId v) const { return exits_[v]; }
  [[nodiscard]] std::pair<VertexId, VertexId> endpoints(EdgeId e) const { return arcs_[e]; }

  /// Where the token lands when it leaves `from` along e.
  [[nodiscard]] VertexId head(EdgeId e, VertexId from) const {
    auto [a, b] = arcs_[e];
    return a == from ? b : a;
  }

  /// Weak connectivity.
  [[nodiscard]] bool connected() const {
    if (n_ == 0) return true;
    std::vector<std::vector<VertexId>> adj(n_);
    for (auto [a, b] : arcs_) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    std::vector<bool> seen(n_, false);
    std::vector<VertexId> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      for (VertexId w : adj[u]) {
        if (!seen[w]) {
          seen[w] = true;
          ++count;
          stack.push_back(w);
        }
      }
    }
    return count == n_;
  }

 private:
  std::size_t n_;
  std::vector<std::pair<VertexId, VertexId>> arcs_;
  bool directed_;
  std::vector<EdgeMask> exits_;
};

/// A game position. Small value type; copy per branch.
struct GameState {
  std::shared_ptr<const Board> board;
  VertexId start = 0;
  VertexId token = 0;
  EdgeMask removed;
  Player mover = Player::Alice;
  Variant variant = Variant::Feedback;
  /// Set once a move has ended the game.
  std::optional<Player> winner;
  /// The edge used by the previous move, if any.
  std::optional<EdgeId> last_move;

  /// Vertex the token left on the previous move.
  [[nodiscard]] std::optional<VertexId> previous_token() const {
    if (!last_move) return std::nullopt;
    return board->head(*last_move, token);
  }

  [[nodiscard]] std::size_t moves_made() const { return removed.count(); }
  [[nodiscard]] EdgeMask available() const { return board->exits(token) & ~removed; }
  [[nodiscard]] bool finished() const { return winner.has_value() || available().none(); }
};

inline GameState initial_state(std::shared_ptr<const Board> board, VertexId s, Variant variant) {
  if (!board) throw EngineError("null board");
  if (s >= board->vertex_count()) throw EngineError("start vertex " + std::to_string(s) + " out of range");
  if ((variant == Variant::EdgeGeoDirected) != board->directed()) {
    throw EngineError(std::string("variant ") + std::string(to_string(variant)) +
                      (board->directed() ? " cannot be played on a directed board"
                                         : " requires a directed board"));
  }
  if (!board->connected()) throw EngineError("game graph must be connected");
  GameState st;
  st.board = std::move(board);
  st.start = s;
  st.token = s;
  st.variant = variant;
  return st;
}

inline GameState initial_state(const Graph& g, VertexId s, Variant variant) {
  return initial_state(Board::of(g), s, variant);
}

/// Unremoved edges leaving the token, ascending by id. Empty once the game
/// has been won.
inline std::vector<EdgeId> legal_moves(const GameState& st) {
  std::vector<EdgeId> out;
  if (st.winner) return out;
  st.available().for_each([&](std::size_t e) { out.push_back(static_cast<EdgeId>(e)); });
  return out;
}

/// Outcome of moving from `st` along e without building the successor.
inline MoveOutcome classify_move(const Board& b, VertexId start, Variant variant, const EdgeMask& removed,
                                 VertexId from, EdgeId e) {
  const VertexId to = b.head(e, from);
  if (variant == Variant::Feedback && to == start) return MoveOutcome::WinBackToStart;
  EdgeMask after = removed;
  after.set(e);
  if ((b.exits(to) & ~after).none()) return MoveOutcome::WinIsolation;
  return MoveOutcome::Ongoing;
}

inline std::pair<GameState, MoveOutcome> apply_move(const GameState& st, EdgeId e) {
  if (st.winner) throw EngineError("game is already over");
  if (e >= st.board->edge_count() || !st.available().test(e)) {
    throw EngineError("edge " + std::to_string(e) + " is not a legal move from vertex " +
                      std::to_string(st.token));
  }
  MoveOutcome outcome = classify_move(*st.board, st.start, st.variant, st.removed, st.token, e);
  GameState next = st;
  next.token = st.board->head(e, st.token);
  next.removed.set(e);
  next.mover = opponent(st.mover);
  next.last_move = e;
  if (is_win(outcome)) next.winner = st.mover;
  return {std::move(next), outcome};
}

/// Replays a move list from the initial state; throws EngineError on an
/// illegal move.
inline std::pair<GameState, MoveOutcome> replay(const GameState& initial, const std::vector<EdgeId>& moves) {
  GameState st = initial;
  MoveOutcome last = MoveOutcome::Ongoing;
  for (EdgeId e : moves) {
    std::tie(st, last) = apply_move(st, e);
  }
  return {st, last};
}

/// Winner of a finished position: the recorded winner, or, when the mover is
/// stuck at a degenerate start, the opponent.
inline std::optional<Player> decided_winner(const GameState& st) {
  if (st.winner) return st.winner;
  if (st.available().none()) return opponent(st.mover);
  return std::nullopt;
}

}  // namespace fgl
