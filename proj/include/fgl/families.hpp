#pragma once

#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fgl/graph.hpp"

namespace fgl {

/// Row j, column k of a triangular grid: the vertex v^j_k, 0 <= k <= j <= n.
struct TriCoord {
  std::size_t row = 0;
  std::size_t col = 0;
  friend bool operator==(const TriCoord&, const TriCoord&) = default;
};

/// Vertex (u_i, v_j) of a toroidal grid; arithmetic is modular.
struct TorusCoord {
  std::size_t i = 0;
  std::size_t j = 0;
  friend bool operator==(const TorusCoord&, const TorusCoord&) = default;
};

/// T_n with its coordinate map. Vertex ids run row by row:
/// id(v^j_k) = j(j+1)/2 + k.
class TriangularGrid {
 public:
  explicit TriangularGrid(std::size_t n) : n_(n), graph_(build(n)) {}

  [[nodiscard]] std::size_t size() const { return n_; }
  [[nodiscard]] const Graph& graph() const { return graph_; }

  [[nodiscard]] VertexId vertex(std::size_t row, std::size_t col) const {
    if (row > n_ || col > row) {
      throw std::out_of_range("v^" + std::to_string(row) + "_" + std::to_string(col) +
                              " is not a vertex of T_" + std::to_string(n_));
    }
    return index(row, col);
  }
  [[nodiscard]] VertexId vertex(TriCoord c) const { return vertex(c.row, c.col); }

  [[nodiscard]] TriCoord coord(VertexId v) const {
    std::size_t row = 0;
    while ((row + 1) * (row + 2) / 2 <= v) ++row;
    return {row, v - row * (row + 1) / 2};
  }

  /// The reflection v^j_k -> v^j_{j-k}, an automorphism fixing v^0_0.
  [[nodiscard]] VertexId mirror(VertexId v) const {
    auto c = coord(v);
    return index(c.row, c.row - c.col);
  }

  static std::string label(std::size_t row, std::size_t col) {
    return "v^" + std::to_string(row) + "_" + std::to_string(col);
  }

 private:
  static VertexId index(std::size_t row, std::size_t col) {
    return static_cast<VertexId>(row * (row + 1) / 2 + col);
  }

  static Graph build(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t j = 0; j <= n; ++j) {
      for (std::size_t k = 0; k <= j; ++k) labels.push_back(label(j, k));
    }
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (std::size_t j = 1; j <= n; ++j) {
      for (std::size_t k = 0; k < j; ++k) edges.emplace_back(index(j, k), index(j, k + 1));
      edges.emplace_back(index(j, 0), index(j - 1, 0));
      edges.emplace_back(index(j, j), index(j - 1, j - 1));
      for (std::size_t k = 1; k < j; ++k) {
        edges.emplace_back(index(j, k), index(j - 1, k - 1));
        edges.emplace_back(index(j, k), index(j - 1, k));
      }
    }
    return Graph(std::move(labels), std::move(edges));
  }

  std::size_t n_;
  Graph graph_;
};

/// Q(m,n) = C_m x C_n. A factor of length 2 is the 2-cycle, so its rungs are
/// doubled and the graph stays 4-regular. id(u_i, v_j) = i*n + j.
class ToroidalGrid {
 public:
  ToroidalGrid(std::size_t m, std::size_t n) : m_(m), n_(n), graph_(build(m, n)) {}

  [[nodiscard]] std::size_t rows() const { return m_; }
  [[nodiscard]] std::size_t cols() const { return n_; }
  [[nodiscard]] const Graph& graph() const { return graph_; }

  /// Coordinates are reduced modulo (m, n); negative offsets are accepted.
  [[nodiscard]] VertexId vertex(long long i, long long j) const {
    auto mod = [](long long a, std::size_t b) {
      long long r = a % static_cast<long long>(b);
      return static_cast<std::size_t>(r < 0 ? r + static_cast<long long>(b) : r);
    };
    return static_cast<VertexId>(mod(i, m_) * n_ + mod(j, n_));
  }
  [[nodiscard]] TorusCoord coord(VertexId v) const { return {v / n_, v % n_}; }

  /// The translation (u_i, v_j) -> (u_{i+a}, v_{j+b}).
  [[nodiscard]] VertexId shift(VertexId v, long long a, long long b) const {
    auto c = coord(v);
    return vertex(static_cast<long long>(c.i) + a, static_cast<long long>(c.j) + b);
  }

  static std::string label(std::size_t i, std::size_t j) {
    return "(u_" + std::to_string(i) + ",v_" + std::to_string(j) + ")";
  }

 private:
  static Graph build(std::size_t m, std::size_t n) {
    if (m < 2 || n < 2) {
      throw GraphError("toroidal grid Q(m,n) needs m >= 2 and n >= 2");
    }
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) labels.push_back(label(i, j));
    }
    auto id = [n](std::size_t i, std::size_t j) { return static_cast<VertexId>(i * n + j); };
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) edges.emplace_back(id(i, j), id(i, (j + 1) % n));
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) edges.emplace_back(id(i, j), id((i + 1) % m, j));
    }
    return Graph(std::move(labels), std::move(edges));
  }

  std::size_t m_;
  std::size_t n_;
  Graph graph_;
};

/// The hub graph G_k: cycles C_2k = u_0..u_{2k-1} and C_4k = v_0..v_{4k-1},
/// u_i joined to v_{2i} and v_{2i+1}, and a start vertex s joined to every v_j.
/// Ids: s = 0, u_i = 1 + i, v_j = 1 + 2k + j.
class GkGraph {
 public:
  explicit GkGraph(std::size_t k) : k_(k), graph_(build(k)) {}

  [[nodiscard]] std::size_t k() const { return k_; }
  [[nodiscard]] const Graph& graph() const { return graph_; }

  [[nodiscard]] VertexId s() const { return 0; }
  [[nodiscard]] VertexId u(long long i) const {
    return static_cast<VertexId>(1 + wrap(i, 2 * k_));
  }
  [[nodiscard]] VertexId v(long long j) const {
    return static_cast<VertexId>(1 + 2 * k_ + wrap(j, 4 * k_));
  }
  [[nodiscard]] bool is_u(VertexId x) const { return x >= 1 && x <= 2 * k_; }
  [[nodiscard]] bool is_v(VertexId x) const { return x > 2 * k_ && x <= 6 * k_; }
  [[nodiscard]] std::size_t u_index(VertexId x) const { return x - 1; }
  [[nodiscard]] std::size_t v_index(VertexId x) const { return x - 1 - 2 * k_; }

 private:
  static std::size_t wrap(long long a, std::size_t b) {
    long long r = a % static_cast<long long>(b);
    return static_cast<std::size_t>(r < 0 ? r + static_cast<long long>(b) : r);
  }

  static Graph build(std::size_t k) {
    if (k < 2) throw GraphError("G_k is defined for k >= 2");
    std::vector<std::string> labels{"s"};
    for (std::size_t i = 0; i < 2 * k; ++i) labels.push_back("u_" + std::to_string(i));
    for (std::size_t j = 0; j < 4 * k; ++j) labels.push_back("v_" + std::to_string(j));
    auto u = [](std::size_t i) { return static_cast<VertexId>(1 + i); };
    auto v = [k](std::size_t j) { return static_cast<VertexId>(1 + 2 * k + j); };
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (std::size_t i = 0; i < 2 * k; ++i) edges.emplace_back(u(i), u((i + 1) % (2 * k)));
    for (std::size_t j = 0; j < 4 * k; ++j) edges.emplace_back(v(j), v((j + 1) % (4 * k)));
    for (std::size_t i = 0; i < 2 * k; ++i) {
      edges.emplace_back(u(i), v(2 * i));
      edges.emplace_back(u(i), v(2 * i + 1));
    }
    for (std::size_t j = 0; j < 4 * k; ++j) edges.emplace_back(0, v(j));
    return Graph(std::move(labels), std::move(edges));
  }

  std::size_t k_;
  Graph graph_;
};

inline TriangularGrid triangular_grid(std::size_t n) { return TriangularGrid(n); }
inline ToroidalGrid toroidal_grid(std::size_t m, std::size_t n) { return ToroidalGrid(m, n); }
inline GkGraph gk_graph(std::size_t k) { return GkGraph(k); }

/// Simple cycle C_n on vertices "0".."n-1".
inline Graph cycle(std::size_t n) {
  if (n < 3) throw GraphError("cycle C_n needs n >= 3");
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    edges.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>((i + 1) % n));
  }
  return Graph::from_edges(n, std::move(edges));
}

}  // namespace fgl
