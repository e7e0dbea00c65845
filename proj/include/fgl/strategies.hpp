#pragma once

#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "fgl/engine.hpp"
#include "fgl/families.hpp"
#include "fgl/kernel.hpp"
#include "fgl/policy.hpp"
#include "fgl/solver.hpp"

namespace fgl {

namespace detail {

// Smallest unused edge from the token to `target`.
inline std::optional<EdgeId> edge_to(const GameState& st, VertexId target) {
  std::optional<EdgeId> out;
  st.available().for_each([&](std::size_t e) {
    if (!out && st.board->head(static_cast<EdgeId>(e), st.token) == target) out = static_cast<EdgeId>(e);
  });
  return out;
}

inline std::optional<EdgeId> immediate_win(const GameState& st) {
  std::optional<EdgeId> out;
  st.available().for_each([&](std::size_t e) {
    if (out) return;
    if (is_win(classify_move(*st.board, st.start, st.variant, st.removed, st.token, static_cast<EdgeId>(e)))) {
      out = static_cast<EdgeId>(e);
    }
  });
  return out;
}

inline bool joined_by_used_edge(const GameState& st, const Graph& g, VertexId a, VertexId b) {
  for (EdgeId e : g.edges_joining(a, b)) {
    if (st.removed.test(e)) return true;
  }
  return false;
}

// The policy families are tied to one concrete graph; refuse anything else.
inline void require_instance(const GameState& st, const Graph& g, const std::string& label) {
  const Board& b = *st.board;
  bool same = st.variant == Variant::Feedback && b.vertex_count() == g.vertex_count() &&
              b.edge_count() == g.edge_count();
  for (EdgeId e = 0; same && e < g.edge_count(); ++e) same = b.endpoints(e) == g.endpoints(e);
  if (!same) throw PolicyError(label + ": position is not on the graph this policy was built for");
}

inline EdgeId need(std::optional<EdgeId> e, const std::string& what) {
  if (!e) throw PolicyError(what);
  return *e;
}

// Move from the token along an unused H-edge into B, smallest id first.
inline std::optional<EdgeId> kernel_step(const GameState& st, const VertexSet& black, const EdgeMask& h) {
  std::optional<EdgeId> out;
  (st.available() & h).for_each([&](std::size_t e) {
    if (!out && black.contains(st.board->head(static_cast<EdgeId>(e), st.token))) out = static_cast<EdgeId>(e);
  });
  return out;
}

// First vertex outside B with an odd number of unused H-edges, if any.
inline std::optional<VertexId> odd_white_vertex(const Board& b, const VertexSet& black, const EdgeMask& h,
                                                const EdgeMask& removed) {
  std::vector<std::size_t> count(b.vertex_count(), 0);
  (h & ~removed).for_each([&](std::size_t e) {
    auto [x, y] = b.endpoints(static_cast<EdgeId>(e));
    ++count[black.contains(x) ? y : x];
  });
  for (VertexId v = 0; v < b.vertex_count(); ++v) {
    if (count[v] % 2 != 0) return v;
  }
  return std::nullopt;
}

}  // namespace detail

/// A residual even kernel: once the edges `entry` have been used and the
/// token sits in `black` with the opponent to move, the owner answers every
/// move out of B along an unused edge of H back into B.
struct ResidualKernel {
  std::string name;
  EdgeMask entry;
  VertexSet black;
  EdgeMask h;

  /// Whether st lies in this residual game: every entry edge is used and
  /// every other used edge belongs to H.
  [[nodiscard]] bool contains(const GameState& st) const {
    return (st.removed & entry) == entry && (st.removed & ~(entry | h)).none();
  }
};

/// H = E(B, N(B)) in the graph left after removing `entry`.
inline ResidualKernel make_residual_kernel(std::string name, const Board& b, const EdgeMask& entry,
                                           VertexSet black) {
  ResidualKernel rk{std::move(name), entry, std::move(black), {}};
  for (EdgeId e = 0; e < b.edge_count(); ++e) {
    if (entry.test(e)) continue;
    auto [x, y] = b.endpoints(e);
    if (rk.black.contains(x) != rk.black.contains(y)) rk.h.set(e);
  }
  return rk;
}

/// The move prescribed by rk, checking that the invariant (every vertex
/// outside B keeps an even number of unused H-edges) holds after it.
inline EdgeId residual_kernel_move(const ResidualKernel& rk, const GameState& st) {
  if (rk.black.contains(st.token)) throw PolicyError(rk.name + ": token is on the black side");
  const EdgeId e = detail::need(detail::kernel_step(st, rk.black, rk.h), rk.name + ": no unused H-edge into B");
  EdgeMask after = st.removed;
  after.set(e);
  if (auto v = detail::odd_white_vertex(*st.board, rk.black, rk.h, after)) {
    throw PolicyError(rk.name + ": invariant broken at vertex " + std::to_string(*v));
  }
  return e;
}

/// Bob's strategy from an even kernel certificate of (g, s): answer each of
/// Alice's moves from B to W by an unused H-edge back into B.
inline Policy kernel_policy(const Graph& g, const KernelCert& cert) {
  auto board = Board::of(g);
  auto rk = std::make_shared<const ResidualKernel>(
      make_residual_kernel("kernel", *board, EdgeMask{}, cert.black));
  auto graph = std::make_shared<const Graph>(g);
  const VertexId s = cert.start;
  return Policy{Player::Bob, "kernel", [rk, graph, s](const GameState& st) {
                  detail::require_instance(st, *graph, "kernel");
                  if (st.start != s) throw PolicyError("kernel: certificate is for a different start vertex");
                  return residual_kernel_move(*rk, st);
                }};
}

/// Alice on Q(2,n), n odd: open along the row, answer a rung with the other
/// rung, and answer a step along the row with the next step.
inline Policy q2n_policy(std::size_t n) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("q2n policy needs an odd n >= 3");
  auto q = std::make_shared<const ToroidalGrid>(2, n);
  return Policy{Player::Alice, "q2n", [q](const GameState& st) {
                  detail::require_instance(st, q->graph(), "q2n");
                  if (auto w = detail::immediate_win(st)) return *w;
                  const auto s = q->coord(st.start);
                  auto at = [&](long long i, long long j) {
                    return q->vertex(i + static_cast<long long>(s.i), j + static_cast<long long>(s.j));
                  };
                  const auto c = q->coord(q->shift(st.token, -static_cast<long long>(s.i),
                                                   -static_cast<long long>(s.j)));
                  const auto j = static_cast<long long>(c.j);
                  if (st.moves_made() == 0) return detail::need(detail::edge_to(st, at(0, 1)), "q2n: opening edge used");
                  if (c.i == 1) return detail::need(detail::edge_to(st, at(0, j)), "q2n: both rungs used");
                  return detail::need(detail::edge_to(st, at(0, j + 1)), "q2n: row edge used");
                }};
}

/// Alice on Q(3,n), gcd(3,n) = 1. After s -> (u_1,v_0), with Bob's move
/// from (i,j) normalised so that his first step went to (u_1,v_1):
///   to (i,j-1), (i+1,j) or (i-1,j): step back to column j-1;
///   to (i,j+1): step to (i+1,j+1), except (u_1,v_{n-1}) -> (u_1,v_0).
inline Policy q3n_policy(std::size_t n) {
  if (n < 4 || std::gcd(n, std::size_t{3}) != 1) {
    throw std::invalid_argument("q3n policy needs n >= 4 with gcd(3, n) = 1");
  }
  auto q = std::make_shared<const ToroidalGrid>(3, n);
  return Policy{Player::Alice, "q3n", [q, n](const GameState& st) {
                  detail::require_instance(st, q->graph(), "q3n");
                  if (auto w = detail::immediate_win(st)) return *w;
                  const auto s = q->coord(st.start);
                  const auto nn = static_cast<long long>(n);
                  auto at = [&](long long i, long long j, bool flip) {
                    return q->vertex(i + static_cast<long long>(s.i),
                                     (flip ? -j : j) + static_cast<long long>(s.j));
                  };
                  if (st.moves_made() == 0) return detail::need(detail::edge_to(st, at(1, 0, false)), "q3n: opening");
                  const bool flip = !detail::joined_by_used_edge(st, q->graph(), at(1, 0, false), at(1, 1, false)) &&
                                    detail::joined_by_used_edge(st, q->graph(), at(1, 0, false), at(1, -1, false));
                  auto rel = [&](VertexId v) {
                    auto c = q->coord(v);
                    long long i = (static_cast<long long>(c.i) - static_cast<long long>(s.i) + 3) % 3;
                    long long j = (static_cast<long long>(c.j) - static_cast<long long>(s.j)) % nn;
                    if (flip) j = -j;
                    return std::pair{i, ((j % nn) + nn) % nn};
                  };
                  const auto from = st.previous_token();
                  if (!from) throw PolicyError("q3n: no previous move");
                  auto [fi, fj] = rel(*from);
                  auto [ti, tj] = rel(st.token);
                  const long long di = (ti - fi + 3) % 3;
                  const long long dj = (tj - fj + nn) % nn;
                  VertexId target = 0;
                  if (di == 0 && dj == 1) {
                    target = (ti == 1 && tj == nn - 1) ? at(1, 0, flip) : at(ti + 1, tj, flip);
                  } else {
                    target = at(ti, tj - 1, flip);
                  }
                  return detail::need(detail::edge_to(st, target), "q3n: prescribed edge already used");
                }};
}

/// Bob on G_k: return to s when the s-edge is free, otherwise step from a v
/// to its u and run around the u-cycle.
inline Policy gk_policy(std::size_t k) {
  auto gk = std::make_shared<const GkGraph>(k);
  return Policy{Player::Bob, "gk", [gk](const GameState& st) {
                  detail::require_instance(st, gk->graph(), "gk");
                  if (st.start != gk->s()) throw PolicyError("gk: start must be s");
                  if (auto w = detail::immediate_win(st)) return *w;
                  const VertexId t = st.token;
                  if (gk->is_v(t)) {
                    const auto j = static_cast<long long>(gk->v_index(t));
                    return detail::need(detail::edge_to(st, gk->u(j / 2)), "gk: u-edge already used");
                  }
                  if (gk->is_u(t)) {
                    const auto i = static_cast<long long>(gk->u_index(t));
                    auto fwd = detail::edge_to(st, gk->u(i + 1));
                    auto back = detail::edge_to(st, gk->u(i - 1));
                    if (fwd && back) return std::min(*fwd, *back);
                    return detail::need(fwd ? fwd : back, "gk: both u-cycle edges used");
                  }
                  throw PolicyError("gk: token at s");
                }};
}

/// Whether the player to move forces a win within `plies` of their own
/// moves and replies.
inline bool wins_within(const GameState& st, int plies) {
  if (auto w = decided_winner(st)) return *w == st.mover;
  if (plies <= 0) return false;
  if (detail::immediate_win(st)) return true;
  if (plies < 3) return false;
  for (EdgeId e : legal_moves(st)) {
    const auto after = apply_move(st, e).first;
    bool all = true;
    for (EdgeId r : legal_moves(after)) {
      const auto next = apply_move(after, r);
      if (is_win(next.second) || !wins_within(next.first, plies - 2)) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

/// A vertex adjacent to the token is dead when moving onto it lets the
/// opponent force a win within `depth` plies.
inline bool is_dead_vertex(const GameState& st, VertexId v, int depth = 4) {
  bool any = false;
  bool dead = true;
  for (EdgeId e : legal_moves(st)) {
    if (st.board->head(e, st.token) != v) continue;
    any = true;
    auto [next, outcome] = apply_move(st, e);
    if (is_win(outcome) || !wins_within(next, depth)) dead = false;
  }
  return any && dead;
}

/// is_dead_vertex with a fixed lookahead.
struct DeadVertexMarker {
  int depth = 4;
  bool operator()(const GameState& st, VertexId v) const { return is_dead_vertex(st, v, depth); }
};

namespace detail {

struct T5Data {
  TriangularGrid t{5};
  std::shared_ptr<const Board> board = Board::of(t.graph());
  std::map<std::tuple<std::uint64_t, std::uint64_t, VertexId>, VertexId> opening;

  static std::tuple<std::uint64_t, std::uint64_t, VertexId> key(const EdgeMask& m, VertexId token) {
    return {m.word(0), m.word(1), token};
  }

  std::vector<ResidualKernel> regions;
  EdgeMask branch_b;
  // Alice's replies in the branch where Bob left v^2_2 downwards and Alice
  // came back to v^4_3. A reply applies only once its whole line so far has
  // been played.
  struct Reply {
    VertexId from;
    VertexId to;
    EdgeMask line;
    VertexId answer;
  };
  std::vector<Reply> replies;

  VertexId v(std::size_t r, std::size_t c) const { return t.vertex(r, c); }

  EdgeMask path_edges(const std::vector<TriCoord>& path) const {
    EdgeMask m;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      auto e = t.graph().edges_joining(t.vertex(path[i]), t.vertex(path[i + 1]));
      m.set(e.at(0));
    }
    return m;
  }

  T5Data() {
    // Alice's scripted moves at the head of the game.
    const std::vector<std::vector<TriCoord>> lines{
        {{0, 0}, {1, 0}, {2, 0}, {3, 0}},
        {{0, 0}, {1, 0}, {2, 1}, {2, 2}},
        {{0, 0}, {1, 0}, {2, 1}, {2, 2}, {3, 3}, {4, 3}},
        {{0, 0}, {1, 0}, {2, 1}, {2, 2}, {3, 2}, {4, 3}},
    };
    for (const auto& line : lines) {
      std::vector<TriCoord> prefix(line.begin(), line.end() - 1);
      opening[key(path_edges(prefix), t.vertex(prefix.back()))] = t.vertex(line.back());
    }
    VertexSet left(t.graph().vertex_count(),
                   {v(0, 0), v(2, 0), v(2, 2), v(3, 0), v(4, 3), v(5, 0), v(5, 2), v(5, 5)});
    regions.push_back(
        make_residual_kernel("t5-left", *board, path_edges({{0, 0}, {1, 0}, {2, 0}, {3, 0}}), std::move(left)));
    VertexSet right(t.graph().vertex_count(), {v(0, 0), v(2, 1), v(3, 0), v(4, 3), v(5, 0), v(5, 2), v(5, 5)});
    regions.push_back(make_residual_kernel(
        "t5-right", *board, path_edges({{0, 0}, {1, 0}, {2, 1}, {2, 2}, {3, 3}, {4, 3}}), std::move(right)));
    branch_b = path_edges({{0, 0}, {1, 0}, {2, 1}, {2, 2}, {3, 2}, {4, 3}});

    const std::vector<std::vector<TriCoord>> branch{
        {{4, 3}, {4, 4}, {5, 5}, {5, 4}, {4, 3}},
        {{4, 3}, {5, 4}, {5, 5}, {4, 4}, {4, 3}},
        {{4, 3}, {3, 3}, {2, 2}},
        {{4, 3}, {5, 3}, {5, 2}, {4, 1}, {3, 0}, {3, 1}, {4, 1}},
        {{4, 3}, {4, 2}, {5, 2}, {4, 1}, {4, 2}, {3, 1}, {2, 1}, {3, 2}, {4, 2}},
        {{4, 3}, {4, 2}, {5, 2}, {4, 1}, {4, 2}, {3, 2}, {2, 1}, {3, 1}, {4, 2}},
    };
    for (const auto& line : branch) {
      for (std::size_t i = 1; i + 1 < line.size(); i += 2) {
        std::vector<TriCoord> prefix(line.begin(), line.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        replies.push_back({t.vertex(line[i - 1]), t.vertex(line[i]), path_edges(prefix), t.vertex(line[i + 1])});
      }
    }
  }

  std::optional<VertexId> scripted_reply(const GameState& st) const {
    const auto from = st.previous_token();
    if (!from) return std::nullopt;
    for (const auto& r : replies) {
      if (r.from == *from && r.to == st.token && (st.removed & r.line) == r.line) return r.answer;
    }
    return std::nullopt;
  }
};

inline const T5Data& t5_data() {
  static const T5Data data;
  return data;
}

}  // namespace detail

/// The two residual kernels Alice steers into on T_5.
inline const std::vector<ResidualKernel>& t5_residual_kernels() { return detail::t5_data().regions; }

/// Alice on (T_5, v^0_0): a scripted opening, residual kernel play where one
/// applies, scripted replies in the remaining branch, and an exact search
/// of the position wherever the script is silent.
inline Policy t5_policy(SearchLimits local_limits = {}) {
  struct Local {
    SearchLimits limits;
    std::unique_ptr<Solver> solver;
    std::uint64_t local_solves = 0;
  };
  auto local = std::make_shared<Local>();
  local->limits = local_limits;
  return Policy{Player::Alice, "t5", [local](const GameState& st) {
                  const auto& d = detail::t5_data();
                  detail::require_instance(st, d.t.graph(), "t5");
                  if (st.start != d.v(0, 0)) throw PolicyError("t5: start must be v^0_0");
                  if (auto w = detail::immediate_win(st)) return *w;
                  if (st.moves_made() == 0) return detail::need(detail::edge_to(st, d.v(1, 0)), "t5: opening");
                  if (auto it = d.opening.find(d.key(st.removed, st.token)); it != d.opening.end()) {
                    return detail::need(detail::edge_to(st, it->second), "t5: scripted edge used");
                  }
                  for (const auto& rk : d.regions) {
                    if (rk.contains(st) && !rk.black.contains(st.token)) return residual_kernel_move(rk, st);
                  }
                  if ((st.removed & d.branch_b) == d.branch_b) {
                    if (auto target = d.scripted_reply(st)) {
                      if (auto e = detail::edge_to(st, *target)) return *e;
                    }
                  }
                  if (!local->solver) {
                    local->solver = std::make_unique<Solver>(st.board, st.start, st.variant, local->limits);
                  }
                  local->solver->reset_clock();
                  ++local->local_solves;
                  return detail::need(local->solver->best_move(st), "t5: no winning continuation");
                }};
}

}  // namespace fgl
