#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace fgl {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

/// Raised on malformed graph input (self-loops, unknown labels, bad indices).
class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Incidence {
  EdgeId edge;
  VertexId other;
};

/// Membership bitset over the vertex ids of one graph.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe) : bits_(universe, false) {}
  VertexSet(std::size_t universe, std::initializer_list<VertexId> members) : bits_(universe, false) {
    for (VertexId v : members) insert(v);
  }

  static VertexSet all(std::size_t universe) {
    VertexSet s;
    s.bits_.assign(universe, true);
    return s;
  }

  [[nodiscard]] std::size_t universe() const { return bits_.size(); }

  void insert(VertexId v) {
    if (v >= bits_.size()) throw GraphError("vertex " + std::to_string(v) + " out of range");
    bits_[v] = true;
  }
  void erase(VertexId v) {
    if (v < bits_.size()) bits_[v] = false;
  }
  [[nodiscard]] bool contains(VertexId v) const { return v < bits_.size() && bits_[v]; }

  [[nodiscard]] std::size_t size() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
  }
  [[nodiscard]] bool empty() const { return size() == 0; }

  /// Members in ascending order.
  [[nodiscard]] std::vector<VertexId> members() const {
    std::vector<VertexId> out;
    for (std::size_t v = 0; v < bits_.size(); ++v) {
      if (bits_[v]) out.push_back(static_cast<VertexId>(v));
    }
    return out;
  }

  [[nodiscard]] bool intersects(const VertexSet& o) const {
    const std::size_t n = std::min(bits_.size(), o.bits_.size());
    for (std::size_t v = 0; v < n; ++v) {
      if (bits_[v] && o.bits_[v]) return true;
    }
    return false;
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<bool> bits_;
};

/// Immutable loopless undirected multigraph. Edge ids are positions in the
/// construction order; parallel edges are distinct.
class Graph {
 public:
  Graph() = default;

  /// Builds from vertex labels and index pairs. Throws GraphError on loops or
  /// out-of-range endpoints.
  Graph(std::vector<std::string> labels, std::vector<std::pair<VertexId, VertexId>> edges)
      : labels_(std::move(labels)), edges_(std::move(edges)), adjacency_(labels_.size()) {
    const auto n = static_cast<VertexId>(labels_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      auto [a, b] = edges_[e];
      if (a >= n || b >= n) {
        throw GraphError("edge " + std::to_string(e) + " names a vertex outside 0.." +
                         std::to_string(n == 0 ? 0 : n - 1));
      }
      if (a == b) {
        throw GraphError("self-loop at vertex '" + labels_[a] + "'");
      }
      adjacency_[a].push_back({static_cast<EdgeId>(e), b});
      adjacency_[b].push_back({static_cast<EdgeId>(e), a});
    }
  }

  /// Unlabelled convenience: vertices are named "0".."n-1".
  static Graph from_edges(std::size_t n, std::vector<std::pair<VertexId, VertexId>> edges) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t v = 0; v < n; ++v) labels.push_back(std::to_string(v));
    return Graph(std::move(labels), std::move(edges));
  }

  [[nodiscard]] std::size_t vertex_count() const { return labels_.size(); }
  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }

  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
  [[nodiscard]] const std::string& label(VertexId v) const { return labels_.at(v); }
  [[nodiscard]] const std::vector<std::pair<VertexId, VertexId>>& edges() const { return edges_; }
  [[nodiscard]] std::pair<VertexId, VertexId> endpoints(EdgeId e) const { return edges_.at(e); }
  [[nodiscard]] VertexId other_end(EdgeId e, VertexId v) const {
    auto [a, b] = edges_.at(e);
    return a == v ? b : a;
  }
  [[nodiscard]] const std::vector<Incidence>& incident(VertexId v) const { return adjacency_.at(v); }
  [[nodiscard]] std::size_t degree(VertexId v) const { return adjacency_.at(v).size(); }

  [[nodiscard]] std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto& adj : adjacency_) d = std::max(d, adj.size());
    return d;
  }

  [[nodiscard]] std::optional<VertexId> find_label(const std::string& label) const {
    for (std::size_t v = 0; v < labels_.size(); ++v) {
      if (labels_[v] == label) return static_cast<VertexId>(v);
    }
    return std::nullopt;
  }

  /// Edge ids joining a and b, ascending.
  [[nodiscard]] std::vector<EdgeId> edges_joining(VertexId a, VertexId b) const {
    std::vector<EdgeId> out;
    for (const auto& inc : incident(a)) {
      if (inc.other == b) out.push_back(inc.edge);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<std::pair<VertexId, VertexId>> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
};

/// Builds a graph from labels and label pairs.
inline Graph build_graph(const std::vector<std::string>& labels,
                         const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::unordered_map<std::string, VertexId> index;
  for (std::size_t v = 0; v < labels.size(); ++v) {
    if (!index.emplace(labels[v], static_cast<VertexId>(v)).second) {
      throw GraphError("duplicate vertex label '" + labels[v] + "'");
    }
  }
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    auto ia = index.find(a);
    auto ib = index.find(b);
    if (ia == index.end()) throw GraphError("unknown vertex label '" + a + "'");
    if (ib == index.end()) throw GraphError("unknown vertex label '" + b + "'");
    edges.emplace_back(ia->second, ib->second);
  }
  return Graph(labels, std::move(edges));
}

inline bool is_eulerian(const Graph& g) {
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) % 2 != 0) return false;
  }
  return true;
}

/// Vertices reachable from `from` (BFS order).
inline std::vector<VertexId> reachable_from(const Graph& g, VertexId from) {
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<VertexId> order{from};
  seen[from] = true;
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (const auto& inc : g.incident(order[head])) {
      if (!seen[inc.other]) {
        seen[inc.other] = true;
        order.push_back(inc.other);
      }
    }
  }
  return order;
}

/// The empty graph counts as connected, as does K_1.
inline bool is_connected(const Graph& g) {
  if (g.vertex_count() == 0) return true;
  return reachable_from(g, 0).size() == g.vertex_count();
}

namespace detail {

// BFS 2-colouring; on failure returns the conflicting edge.
struct Colouring {
  std::vector<int> colour;
  std::vector<VertexId> parent;
  std::vector<std::size_t> depth;
  std::optional<EdgeId> conflict;
};

inline Colouring two_colour(const Graph& g) {
  const std::size_t n = g.vertex_count();
  Colouring c{std::vector<int>(n, -1), std::vector<VertexId>(n, 0), std::vector<std::size_t>(n, 0),
              std::nullopt};
  for (VertexId root = 0; root < n; ++root) {
    if (c.colour[root] != -1) continue;
    c.colour[root] = 0;
    c.parent[root] = root;
    std::queue<VertexId> q;
    q.push(root);
    while (!q.empty()) {
      VertexId u = q.front();
      q.pop();
      for (const auto& inc : g.incident(u)) {
        if (c.colour[inc.other] == -1) {
          c.colour[inc.other] = 1 - c.colour[u];
          c.parent[inc.other] = u;
          c.depth[inc.other] = c.depth[u] + 1;
          q.push(inc.other);
        } else if (c.colour[inc.other] == c.colour[u] && !c.conflict) {
          c.conflict = inc.edge;
        }
      }
    }
  }
  return c;
}

}  // namespace detail

/// Proper 2-colouring (first part contains vertex 0), or nullopt if the graph
/// has an odd cycle. Throws GraphError on disconnected input.
inline std::optional<std::pair<VertexSet, VertexSet>> bipartition(const Graph& g) {
  if (!is_connected(g)) throw GraphError("bipartition requires a connected graph");
  auto c = detail::two_colour(g);
  if (c.conflict) return std::nullopt;
  VertexSet black(g.vertex_count());
  VertexSet white(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    (c.colour[v] == 0 ? black : white).insert(v);
  }
  return std::make_pair(std::move(black), std::move(white));
}

/// A closed walk of odd length (first vertex repeated at the end), or empty if
/// the graph is bipartite.
inline std::vector<VertexId> odd_closed_walk(const Graph& g) {
  auto c = detail::two_colour(g);
  if (!c.conflict) return {};
  auto [a, b] = g.endpoints(*c.conflict);
  // climb both BFS-tree branches to their common ancestor
  std::vector<VertexId> left{a};
  std::vector<VertexId> right{b};
  VertexId x = a;
  VertexId y = b;
  while (c.depth[x] > c.depth[y]) left.push_back(x = c.parent[x]);
  while (c.depth[y] > c.depth[x]) right.push_back(y = c.parent[y]);
  while (x != y) {
    left.push_back(x = c.parent[x]);
    right.push_back(y = c.parent[y]);
  }
  right.pop_back();
  std::vector<VertexId> walk(left.rbegin(), left.rend());
  walk.insert(walk.end(), right.begin(), right.end());
  walk.push_back(walk.front());
  return walk;
}

/// E_G(A,B): edges with one endpoint in each set, ascending, multiplicity kept.
inline std::vector<EdgeId> edges_between(const Graph& g, const VertexSet& a, const VertexSet& b) {
  if (a.intersects(b)) throw GraphError("edges_between requires disjoint vertex sets");
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [x, y] = g.endpoints(e);
    if ((a.contains(x) && b.contains(y)) || (a.contains(y) && b.contains(x))) out.push_back(e);
  }
  return out;
}

/// N_G(B): vertices outside b adjacent to some member of b.
inline VertexSet neighborhood(const Graph& g, const VertexSet& b) {
  VertexSet out(g.vertex_count());
  for (VertexId v : b.members()) {
    for (const auto& inc : g.incident(v)) {
      if (!b.contains(inc.other)) out.insert(inc.other);
    }
  }
  return out;
}

}  // namespace fgl
