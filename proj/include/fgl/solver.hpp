#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "fgl/edge_mask.hpp"
#include "fgl/engine.hpp"
#include "fgl/transposition_table.hpp"

namespace fgl {

struct SearchLimits {
  std::uint64_t max_states = 50'000'000;
  double max_seconds = 120.0;
  std::size_t table_capacity = std::size_t{1} << 22;
  /// Root moves are searched on this many workers, each with a private table.
  unsigned threads = 1;

  void validate() const {
    if (max_states == 0 || !(max_seconds > 0) || table_capacity == 0 || threads == 0) {
      throw std::invalid_argument("search limits must be positive");
    }
  }
};

struct SearchStats {
  std::uint64_t states_visited = 0;
  std::uint64_t table_hits = 0;

  SearchStats& operator+=(const SearchStats& o) {
    states_visited += o.states_visited;
    table_hits += o.table_hits;
    return *this;
  }
};

/// Thrown when a search runs past its state or time budget. Carries the work
/// done so far.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, SearchStats stats) : std::runtime_error(what), stats_(stats) {}
  [[nodiscard]] const SearchStats& stats() const { return stats_; }

 private:
  SearchStats stats_;
};

struct Verdict {
  Player winner = Player::Bob;
  std::uint64_t states_visited = 0;
  std::uint64_t table_hits = 0;
  std::optional<std::vector<EdgeId>> principal_variation;
  std::chrono::duration<double> wall_time{0};
};

/// Exact perfect-play search over one game (board, start, variant). Keeps its
/// transposition table across queries, so repeated calls on positions of the
/// same game share work.
class Solver {
 public:
  Solver(std::shared_ptr<const Board> board, VertexId start, Variant variant, SearchLimits limits = {})
      : board_(std::move(board)),
        start_(start),
        variant_(variant),
        limits_(limits),
        table_(limits.table_capacity),
        to_start_(board_->vertex_count()),
        distance_(board_->vertex_count(), std::numeric_limits<std::uint32_t>::max()),
        seen_(board_->vertex_count(), 0) {
    limits_.validate();
    for (VertexId v = 0; v < board_->vertex_count(); ++v) {
      board_->exits(v).for_each([&](std::size_t e) {
        if (board_->head(static_cast<EdgeId>(e), v) == start_) to_start_[v].set(e);
      });
    }
    for (std::size_t e = 0; e < board_->edge_count(); ++e) all_edges_.set(e);
    compute_distances();
    reset_clock();
  }

  explicit Solver(const GameState& st, SearchLimits limits = {})
      : Solver(st.board, st.start, st.variant, limits) {}

  /// Restarts the wall-clock budget.
  void reset_clock() { started_ = std::chrono::steady_clock::now(); }
  /// Points the state budget at a different shared counter (root workers).
  void share_counter(std::atomic<std::uint64_t>* counter) { shared_states_ = counter; }

  [[nodiscard]] const SearchStats& stats() const { return stats_; }
  [[nodiscard]] const Board& board() const { return *board_; }
  [[nodiscard]] VertexId start() const { return start_; }
  [[nodiscard]] Variant variant() const { return variant_; }

  /// Whether the player to move at (token, removed) wins. The position must
  /// not already be decided by the previous move.
  bool mover_wins(VertexId token, const EdgeMask& removed) { return search(token, removed); }

  bool mover_wins(const GameState& st) {
    if (auto w = decided_winner(st)) return *w == st.mover;
    return search(st.token, st.removed);
  }

  /// Whether moving along e from st wins for the mover.
  bool move_wins(const GameState& st, EdgeId e) {
    if (is_win(classify_move(*board_, start_, variant_, st.removed, st.token, e))) return true;
    EdgeMask after = st.removed;
    after.set(e);
    return !search(board_->head(e, st.token), after);
  }

  /// Smallest-id move that keeps the mover winning, if any.
  std::optional<EdgeId> best_move(const GameState& st) {
    if (st.finished()) return std::nullopt;
    for (EdgeId e : legal_moves(st)) {
      if (move_wins(st, e)) return e;
    }
    return std::nullopt;
  }

  /// Winner picks its smallest winning move; the loser its smallest move.
  std::vector<EdgeId> principal_variation(const GameState& initial) {
    std::vector<EdgeId> line;
    GameState st = initial;
    while (!st.finished()) {
      auto e = best_move(st);
      EdgeId pick = e ? *e : legal_moves(st).front();
      line.push_back(pick);
      st = apply_move(st, pick).first;
    }
    return line;
  }

 private:
  bool search(VertexId token, const EdgeMask& removed) {
    const EdgeMask avail = board_->exits(token) & ~removed;
    if (avail.none()) return false;
    count_state();

    const bool feedback = variant_ == Variant::Feedback;
    std::array<EdgeId, EdgeMask::kCapacity> moves{};
    std::size_t count = 0;
    bool immediate = false;
    avail.for_each([&](std::size_t e) {
      if (immediate) return;
      const VertexId to = board_->head(static_cast<EdgeId>(e), token);
      if (feedback && to == start_) {
        immediate = true;
        return;
      }
      EdgeMask after = removed;
      after.set(e);
      const EdgeMask onward = board_->exits(to) & ~after;
      if (onward.none()) {
        immediate = true;
        return;
      }
      // Handing the opponent a direct return to the start loses.
      if (feedback && (to_start_[to] & ~after).any()) return;
      moves[count++] = static_cast<EdgeId>(e);
    });
    if (immediate) return true;
    if (count == 0) return false;

    const EdgeMask key = canonical(token, removed);
    if (auto hit = table_.lookup(token, key)) {
      ++stats_.table_hits;
      return *hit;
    }

    if (feedback) {
      std::stable_sort(moves.begin(), moves.begin() + static_cast<std::ptrdiff_t>(count),
                       [&](EdgeId a, EdgeId b) {
                         return distance_[board_->head(a, token)] < distance_[board_->head(b, token)];
                       });
    }
    bool win = false;
    for (std::size_t i = 0; i < count && !win; ++i) {
      EdgeMask after = removed;
      after.set(moves[i]);
      win = !search(board_->head(moves[i], token), after);
    }
    table_.store(token, key, win, removed.count());
    return win;
  }

  // Edges the token can no longer reach never matter, so fold them into the key.
  EdgeMask canonical(VertexId token, const EdgeMask& removed) {
    ++epoch_;
    if (epoch_ == 0) {
      std::fill(seen_.begin(), seen_.end(), 0);
      epoch_ = 1;
    }
    EdgeMask reached;
    stack_.clear();
    stack_.push_back(token);
    seen_[token] = epoch_;
    while (!stack_.empty()) {
      VertexId v = stack_.back();
      stack_.pop_back();
      const EdgeMask out = board_->exits(v) & ~removed;
      reached |= out;
      out.for_each([&](std::size_t e) {
        VertexId w = board_->head(static_cast<EdgeId>(e), v);
        if (seen_[w] != epoch_) {
          seen_[w] = epoch_;
          stack_.push_back(w);
        }
      });
    }
    return ~reached & all_edges_;
  }

  void count_state() {
    ++stats_.states_visited;
    std::uint64_t total = stats_.states_visited;
    if (shared_states_ != nullptr) total = shared_states_->fetch_add(1, std::memory_order_relaxed) + 1;
    if (total > limits_.max_states) {
      throw BudgetExceeded("state budget of " + std::to_string(limits_.max_states) + " exceeded", stats_);
    }
    if ((stats_.states_visited & 0x3fff) == 0) {
      std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started_;
      if (elapsed.count() > limits_.max_seconds) {
        throw BudgetExceeded("time budget of " + std::to_string(limits_.max_seconds) + " s exceeded", stats_);
      }
    }
  }

  void compute_distances() {
    // BFS over reversed exits so that directed boards measure distance *to* s.
    std::vector<std::vector<VertexId>> into(board_->vertex_count());
    for (VertexId v = 0; v < board_->vertex_count(); ++v) {
      board_->exits(v).for_each(
          [&](std::size_t e) { into[board_->head(static_cast<EdgeId>(e), v)].push_back(v); });
    }
    std::queue<VertexId> q;
    distance_[start_] = 0;
    q.push(start_);
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      for (VertexId w : into[v]) {
        if (distance_[w] == std::numeric_limits<std::uint32_t>::max()) {
          distance_[w] = distance_[v] + 1;
          q.push(w);
        }
      }
    }
  }

  std::shared_ptr<const Board> board_;
  VertexId start_;
  Variant variant_;
  SearchLimits limits_;
  TranspositionTable table_;
  std::vector<EdgeMask> to_start_;
  EdgeMask all_edges_;
  std::vector<std::uint32_t> distance_;
  std::vector<std::uint32_t> seen_;
  std::vector<VertexId> stack_;
  std::uint32_t epoch_ = 0;
  SearchStats stats_;
  std::atomic<std::uint64_t>* shared_states_ = nullptr;
  std::chrono::steady_clock::time_point started_;
};

/// Exact winner from the initial position of (board, s, variant).
inline Verdict solve(std::shared_ptr<const Board> board, VertexId s, Variant variant, const SearchLimits& limits = {},
                     bool with_pv = true) {
  const auto t0 = std::chrono::steady_clock::now();
  GameState root = initial_state(board, s, variant);
  Verdict v;
  const auto roots = legal_moves(root);

  if (limits.threads > 1 && roots.size() > 1) {
    std::atomic<std::uint64_t> shared{0};
    std::vector<char> wins(roots.size(), 0);
    std::vector<SearchStats> stats(roots.size());
    std::vector<std::string> failure(roots.size());
    std::vector<std::optional<SearchStats>> partial(roots.size());
    for (std::size_t base = 0; base < roots.size(); base += limits.threads) {
      std::vector<std::thread> pool;
      for (std::size_t i = base; i < std::min(roots.size(), base + limits.threads); ++i) {
        pool.emplace_back([&, i] {
          Solver worker(board, s, variant, limits);
          worker.share_counter(&shared);
          try {
            wins[i] = worker.move_wins(root, roots[i]) ? 1 : 0;
          } catch (const BudgetExceeded& ex) {
            failure[i] = ex.what();
            partial[i] = ex.stats();
          }
          stats[i] = worker.stats();
        });
      }
      for (auto& t : pool) t.join();
    }
    SearchStats total;
    for (const auto& st : stats) total += st;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (!failure[i].empty()) throw BudgetExceeded(failure[i], total);
    }
    v.winner = std::any_of(wins.begin(), wins.end(), [](char w) { return w != 0; }) ? Player::Alice : Player::Bob;
    v.states_visited = total.states_visited;
    v.table_hits = total.table_hits;
    if (with_pv) {
      Solver replay_solver(board, s, variant, limits);
      v.principal_variation = replay_solver.principal_variation(root);
    }
  } else {
    Solver solver(board, s, variant, limits);
    v.winner = solver.mover_wins(root) ? Player::Alice : Player::Bob;
    if (with_pv) v.principal_variation = solver.principal_variation(root);
    v.states_visited = solver.stats().states_visited;
    v.table_hits = solver.stats().table_hits;
  }
  v.wall_time = std::chrono::steady_clock::now() - t0;
  return v;
}

inline Verdict solve(const Graph& g, VertexId s, Variant variant, const SearchLimits& limits = {},
                     bool with_pv = true) {
  return solve(Board::of(g), s, variant, limits, with_pv);
}

/// A move preserving the mover's win, smallest id first; nullopt when the
/// mover is lost (or the game is over).
inline std::optional<EdgeId> best_move(const GameState& st, const SearchLimits& limits = {}) {
  Solver solver(st, limits);
  return solver.best_move(st);
}

}  // namespace fgl
