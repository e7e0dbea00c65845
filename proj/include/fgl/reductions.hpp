#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fgl/engine.hpp"
#include "fgl/graph.hpp"
#include "fgl/solver.hpp"

namespace fgl {

/// A loopless directed multigraph with labelled vertices.
class Digraph {
 public:
  Digraph() = default;
  Digraph(std::vector<std::string> labels, std::vector<std::pair<VertexId, VertexId>> arcs)
      : labels_(std::move(labels)), arcs_(std::move(arcs)), out_(labels_.size(), 0), in_(labels_.size(), 0) {
    for (const auto& [a, b] : arcs_) {
      if (a >= labels_.size() || b >= labels_.size()) throw GraphError("arc endpoint out of range");
      if (a == b) throw GraphError("loop at " + labels_[a]);
      ++out_[a];
      ++in_[b];
    }
  }

  static Digraph from_arcs(std::size_t n, std::vector<std::pair<VertexId, VertexId>> arcs) {
    std::vector<std::string> labels;
    for (std::size_t v = 0; v < n; ++v) labels.push_back(std::to_string(v));
    return Digraph(std::move(labels), std::move(arcs));
  }

  [[nodiscard]] std::size_t vertex_count() const { return labels_.size(); }
  [[nodiscard]] std::size_t arc_count() const { return arcs_.size(); }
  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
  [[nodiscard]] const std::string& label(VertexId v) const { return labels_.at(v); }
  [[nodiscard]] const std::vector<std::pair<VertexId, VertexId>>& arcs() const { return arcs_; }
  [[nodiscard]] std::size_t out_degree(VertexId v) const { return out_.at(v); }
  [[nodiscard]] std::size_t in_degree(VertexId v) const { return in_.at(v); }
  [[nodiscard]] std::size_t degree(VertexId v) const { return out_.at(v) + in_.at(v); }

 private:
  std::vector<std::string> labels_;
  std::vector<std::pair<VertexId, VertexId>> arcs_;
  std::vector<std::size_t> out_;
  std::vector<std::size_t> in_;
};

inline std::shared_ptr<const Board> directed_board(const Digraph& d) {
  return std::make_shared<const Board>(d.vertex_count(), d.arcs(), true);
}

/// Directed edge geography: the token follows unused arcs forwards, and a
/// player who leaves the token with no unused out-arc wins.
inline Verdict deg_solve(const Digraph& d, VertexId s, const SearchLimits& limits = {}, bool with_pv = true) {
  return solve(directed_board(d), s, Variant::EdgeGeoDirected, limits, with_pv);
}

/// The five internal vertices and eight edges replacing one arc a -> b:
/// a-p, p-q, q-r, r-b, p-t, t-w, w-q, w-r.
struct ArcGadget {
  std::size_t arc = 0;
  VertexId tail = 0;
  VertexId head = 0;
  /// p, q, r, t, w
  std::array<VertexId, 5> vertices{};
  std::array<EdgeId, 8> edges{};
};

/// The path x - y - z hung on an odd vertex x, with the edge attaching z.
struct OddVertexPath {
  VertexId x = 0;
  VertexId y = 0;
  VertexId z = 0;
  /// x-y, y-z, z-attachment
  std::array<EdgeId, 3> edges{};
};

struct GadgetMap {
  std::vector<ArcGadget> arcs;
  std::vector<OddVertexPath> odd_paths;
  /// a, b, c of the 4-cycle s-a-b-c-s added by eulerize.
  std::optional<std::array<VertexId, 3>> cycle;
};

struct Reduction {
  Graph graph;
  GadgetMap map;
};

/// Replaces every arc by its pseudo-arc gadget. Original vertices keep their
/// ids; gadget vertices follow, five per arc, in arc order.
inline Reduction pseudo_arc_transform(const Digraph& d) {
  std::vector<std::string> labels = d.labels();
  std::vector<std::pair<VertexId, VertexId>> edges;
  GadgetMap map;
  static constexpr std::array<const char*, 5> kNames{"p", "q", "r", "t", "w"};
  for (std::size_t k = 0; k < d.arc_count(); ++k) {
    auto [a, b] = d.arcs()[k];
    ArcGadget g{k, a, b, {}, {}};
    for (std::size_t i = 0; i < 5; ++i) {
      g.vertices[i] = static_cast<VertexId>(labels.size());
      labels.push_back("arc" + std::to_string(k) + "." + kNames[i]);
    }
    auto [p, q, r, t, w] = g.vertices;
    const std::array<std::pair<VertexId, VertexId>, 8> local{
        {{a, p}, {p, q}, {q, r}, {r, b}, {p, t}, {t, w}, {w, q}, {w, r}}};
    for (std::size_t i = 0; i < 8; ++i) {
      g.edges[i] = static_cast<EdgeId>(edges.size());
      edges.push_back(local[i]);
    }
    map.arcs.push_back(g);
  }
  return {Graph(std::move(labels), std::move(edges)), std::move(map)};
}

/// Makes every degree even: a 4-cycle s-a-b-c-s, and for the odd vertices
/// x_1 < ... < x_2p a path x_i - y_i - z_i, with z_1, z_2 joined to a and
/// z_{2i-1}, z_{2i} joined to y_{2i-3} for 2 <= i <= p.
inline Reduction eulerize(const Graph& g, VertexId s, GadgetMap map = {}) {
  if (s >= g.vertex_count()) throw GraphError("start vertex out of range");
  std::vector<std::string> labels = g.labels();
  std::vector<std::pair<VertexId, VertexId>> edges = g.edges();
  auto add_vertex = [&](std::string label) {
    labels.push_back(std::move(label));
    return static_cast<VertexId>(labels.size() - 1);
  };
  auto add_edge = [&](VertexId x, VertexId y) {
    edges.emplace_back(x, y);
    return static_cast<EdgeId>(edges.size() - 1);
  };

  const VertexId a = add_vertex("eul.a");
  const VertexId b = add_vertex("eul.b");
  const VertexId c = add_vertex("eul.c");
  add_edge(s, a);
  add_edge(a, b);
  add_edge(b, c);
  add_edge(c, s);
  map.cycle = std::array<VertexId, 3>{a, b, c};

  std::vector<VertexId> odd;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) % 2 != 0) odd.push_back(v);
  }
  const std::size_t first = map.odd_paths.size();
  for (std::size_t i = 0; i < odd.size(); ++i) {
    OddVertexPath path;
    path.x = odd[i];
    path.y = add_vertex("eul.y" + std::to_string(i + 1));
    path.z = add_vertex("eul.z" + std::to_string(i + 1));
    path.edges[0] = add_edge(path.x, path.y);
    path.edges[1] = add_edge(path.y, path.z);
    map.odd_paths.push_back(path);
  }
  // 0-based: z_0, z_1 -> a; z_{2i}, z_{2i+1} -> y_{2i-2} for i >= 1.
  for (std::size_t i = 0; i < odd.size(); ++i) {
    auto& path = map.odd_paths[first + i];
    const std::size_t pair = i / 2;
    const VertexId anchor = pair == 0 ? a : map.odd_paths[first + 2 * pair - 2].y;
    path.edges[2] = add_edge(path.z, anchor);
  }
  return {Graph(std::move(labels), std::move(edges)), std::move(map)};
}

/// Pseudo-arc transform followed by eulerize.
inline Reduction reduce_to_feedback(const Digraph& d, VertexId s) {
  auto h = pseudo_arc_transform(d);
  return eulerize(h.graph, s, std::move(h.map));
}

/// Maximum degree 3 and s the only vertex with in-degree 0 and out-degree 2.
inline std::vector<std::string> proof_shape_warnings(const Digraph& d, VertexId s) {
  std::vector<std::string> out;
  if (s >= d.vertex_count()) throw GraphError("start vertex out of range");
  for (VertexId v = 0; v < d.vertex_count(); ++v) {
    if (d.degree(v) > 3) out.push_back(d.label(v) + " has degree " + std::to_string(d.degree(v)) + " > 3");
  }
  if (d.in_degree(s) != 0 || d.out_degree(s) != 2) {
    out.push_back("start " + d.label(s) + " has in-degree " + std::to_string(d.in_degree(s)) +
                  " and out-degree " + std::to_string(d.out_degree(s)) + ", expected 0 and 2");
  }
  for (VertexId v = 0; v < d.vertex_count(); ++v) {
    if (v != s && d.in_degree(v) == 0 && d.out_degree(v) == 2) {
      out.push_back(d.label(v) + " also has in-degree 0 and out-degree 2");
    }
  }
  return out;
}

struct ReductionCheck {
  Player directed_winner = Player::Bob;
  Player undirected_winner = Player::Bob;
  Player feedback_winner = Player::Bob;
  std::size_t undirected_edges = 0;
  std::size_t feedback_edges = 0;
  std::vector<std::string> warnings;

  [[nodiscard]] bool proof_shape() const { return warnings.empty(); }
  [[nodiscard]] bool agree() const {
    return directed_winner == undirected_winner && undirected_winner == feedback_winner;
  }
};

/// Solves (D, s) as directed edge geography, its pseudo-arc graph as
/// undirected edge geography, and the eulerized graph as the feedback game.
/// The three winners are only expected to agree on proof-shape inputs.
inline ReductionCheck reduction_equivalence_check(const Digraph& d, VertexId s, const SearchLimits& limits = {}) {
  ReductionCheck out;
  out.warnings = proof_shape_warnings(d, s);
  auto h = pseudo_arc_transform(d);
  auto g = eulerize(h.graph, s, h.map);
  out.undirected_edges = h.graph.edge_count();
  out.feedback_edges = g.graph.edge_count();
  out.directed_winner = deg_solve(d, s, limits, false).winner;
  out.undirected_winner = solve(h.graph, s, Variant::EdgeGeoUndirected, limits, false).winner;
  out.feedback_winner = solve(g.graph, s, Variant::Feedback, limits, false).winner;
  return out;
}

}  // namespace fgl
