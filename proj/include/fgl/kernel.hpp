#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fgl/families.hpp"
#include "fgl/graph.hpp"
#include "fgl/solver.hpp"

namespace fgl {

class KernelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A candidate even kernel S with respect to start s.
struct KernelSet {
  VertexId start = 0;
  VertexSet members;

  friend bool operator==(const KernelSet&, const KernelSet&) = default;
};

struct KernelViolation {
  VertexId vertex;
  /// 1: s in S; 2: S independent; 3: even count of edges into S.
  int rule;
  std::string message;
};

struct KernelValidation {
  std::vector<KernelViolation> violations;
  [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// Checks S against the three even-kernel rules. Parity counts incident
/// edges into S, so parallel edges count with multiplicity.
inline KernelValidation validate_even_kernel(const Graph& g, VertexId s, const VertexSet& kernel) {
  KernelValidation result;
  if (kernel.universe() != g.vertex_count()) {
    throw KernelError("kernel set is sized for " + std::to_string(kernel.universe()) + " vertices, graph has " +
                      std::to_string(g.vertex_count()));
  }
  if (s >= g.vertex_count() || !kernel.contains(s)) {
    result.violations.push_back({s, 1, "start vertex is not in S"});
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.endpoints(e);
    if (kernel.contains(a) && kernel.contains(b)) {
      result.violations.push_back(
          {std::max(a, b), 2, g.label(a) + " and " + g.label(b) + " are adjacent members of S"});
    }
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (kernel.contains(v)) continue;
    std::size_t into = 0;
    for (const auto& inc : g.incident(v)) into += kernel.contains(inc.other) ? 1 : 0;
    if (into % 2 != 0) {
      result.violations.push_back(
          {v, 3, g.label(v) + " has " + std::to_string(into) + " edges into S (odd)"});
    }
  }
  return result;
}

/// Even kernel graph H_s: black part B = S, white part W = N_G(B), and the
/// edges E_G(B, W). White vertices with no H-edge are never included.
struct KernelCert {
  VertexId start = 0;
  VertexSet black;
  VertexSet white;
  std::vector<EdgeId> edges;
};

inline KernelCert build_kernel_cert(const Graph& g, const KernelSet& kernel) {
  auto check = validate_even_kernel(g, kernel.start, kernel.members);
  if (!check.ok()) {
    throw KernelError("not an even kernel: " + check.violations.front().message);
  }
  KernelCert cert;
  cert.start = kernel.start;
  cert.black = kernel.members;
  cert.white = neighborhood(g, kernel.members);
  cert.edges = edges_between(g, cert.black, cert.white);
  return cert;
}

namespace detail {

// Backtracking over vertices in BFS order from s. A vertex outside S is
// checked for parity as soon as it and all its neighbours are decided.
class KernelSearch {
 public:
  KernelSearch(const Graph& g, VertexId s, std::uint64_t budget, bool stop_at_first)
      : g_(g), s_(s), budget_(budget), stop_at_first_(stop_at_first), in_(g.vertex_count(), 0),
        decided_(g.vertex_count(), 0) {
    if (s >= g.vertex_count()) throw KernelError("start vertex out of range");
    // BFS order; vertices in other components follow in id order.
    std::vector<char> seen(g.vertex_count(), 0);
    order_ = reachable_from(g, s);
    for (VertexId v : order_) seen[v] = 1;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (!seen[v]) order_.push_back(v);
    }
    std::vector<std::size_t> pos(g.vertex_count());
    for (std::size_t i = 0; i < order_.size(); ++i) pos[order_[i]] = i;
    closes_.assign(order_.size(), {});
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
      std::size_t last = pos[u];
      for (const auto& inc : g.incident(u)) last = std::max(last, pos[inc.other]);
      closes_[last].push_back(u);
    }
  }

  void run() { step(0); }

  [[nodiscard]] const std::vector<KernelSet>& found() const { return found_; }
  [[nodiscard]] std::uint64_t nodes() const { return nodes_; }

 private:
  bool step(std::size_t i) {
    if (i == order_.size()) {
      VertexSet members(g_.vertex_count());
      for (VertexId v = 0; v < g_.vertex_count(); ++v) {
        if (in_[v]) members.insert(v);
      }
      found_.push_back({s_, std::move(members)});
      return stop_at_first_;
    }
    if (++nodes_ > budget_) {
      throw BudgetExceeded("kernel search exceeded " + std::to_string(budget_) + " nodes", SearchStats{nodes_, 0});
    }
    const VertexId v = order_[i];
    const bool forced_in = v == s_;
    // out-branch first, then in-branch; both give a deterministic order
    for (int choice = forced_in ? 1 : 0; choice <= 1; ++choice) {
      if (choice == 1 && !can_join(v)) continue;
      in_[v] = static_cast<char>(choice);
      decided_[v] = 1;
      if (parity_ok(i) && step(i + 1)) return true;
      decided_[v] = 0;
      in_[v] = 0;
    }
    return false;
  }

  bool can_join(VertexId v) const {
    for (const auto& inc : g_.incident(v)) {
      if (decided_[inc.other] && in_[inc.other]) return false;
    }
    return true;
  }

  bool parity_ok(std::size_t i) const {
    for (VertexId u : closes_[i]) {
      if (in_[u]) continue;
      std::size_t into = 0;
      for (const auto& inc : g_.incident(u)) into += in_[inc.other] ? 1 : 0;
      if (into % 2 != 0) return false;
    }
    return true;
  }

  const Graph& g_;
  VertexId s_;
  std::uint64_t budget_;
  bool stop_at_first_;
  std::vector<char> in_;
  std::vector<char> decided_;
  std::vector<VertexId> order_;
  std::vector<std::vector<VertexId>> closes_;
  std::vector<KernelSet> found_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

inline constexpr std::size_t kMaxEnumerationVertices = 25;

/// Every even kernel with respect to s, sorted by member list. Limited to
/// graphs with at most 25 vertices; use find_even_kernel beyond that.
inline std::vector<KernelSet> enumerate_even_kernels(const Graph& g, VertexId s) {
  if (g.vertex_count() > kMaxEnumerationVertices) {
    throw KernelError("enumeration is limited to " + std::to_string(kMaxEnumerationVertices) +
                      " vertices; use find_even_kernel for larger graphs");
  }
  detail::KernelSearch search(g, s, std::numeric_limits<std::uint64_t>::max(), false);
  search.run();
  auto out = search.found();
  std::sort(out.begin(), out.end(),
            [](const KernelSet& a, const KernelSet& b) { return a.members.members() < b.members.members(); });
  return out;
}

struct KernelSearchResult {
  std::optional<KernelSet> kernel;
  std::uint64_t nodes = 0;
};

/// First even kernel found by backtracking; an empty result means the whole
/// space was exhausted. Throws BudgetExceeded after `max_nodes` search nodes,
/// which proves nothing.
inline KernelSearchResult search_even_kernel(const Graph& g, VertexId s, std::uint64_t max_nodes = 50'000'000) {
  detail::KernelSearch search(g, s, max_nodes, true);
  search.run();
  KernelSearchResult out;
  out.nodes = search.nodes();
  if (!search.found().empty()) out.kernel = search.found().front();
  return out;
}

inline std::optional<KernelSet> find_even_kernel(const Graph& g, VertexId s,
                                                 std::uint64_t max_nodes = 50'000'000) {
  return search_even_kernel(g, s, max_nodes).kernel;
}

/// n = 2^m - 3 with m >= 2 (1, 5, 13, 29, ...).
inline bool is_tri_kernel_free_size(std::size_t n) {
  const std::size_t k = n + 3;
  return k >= 4 && (k & (k - 1)) == 0;
}

/// B = {v^j_k : j and k even} on T_n, n even.
inline KernelSet tri_parity_kernel(const TriangularGrid& t) {
  const std::size_t n = t.size();
  if (n % 2 != 0 || n < 2) throw KernelError("parity kernel needs an even n >= 2, got " + std::to_string(n));
  VertexSet s(t.graph().vertex_count());
  for (std::size_t j = 0; j <= n; j += 2) {
    for (std::size_t k = 0; k <= j; k += 2) s.insert(t.vertex(j, k));
  }
  return {t.vertex(0, 0), std::move(s)};
}

namespace detail {

// Kernel of T_n as coordinates; T_0's kernel is its single vertex.
inline std::vector<TriCoord> tri_kernel_coords(std::size_t n) {
  if (n == 0) return {{0, 0}};
  if (n % 2 == 0) {
    std::vector<TriCoord> out;
    for (std::size_t j = 0; j <= n; j += 2) {
      for (std::size_t k = 0; k <= j; k += 2) out.push_back({j, k});
    }
    return out;
  }
  if (is_tri_kernel_free_size(n)) {
    throw KernelError("T_" + std::to_string(n) + " has no even kernel (n = 2^m - 3)");
  }
  const std::size_t a = (n - 3) / 2;
  const auto inner = tri_kernel_coords(a);
  std::vector<TriCoord> out;
  for (auto [r, c] : inner) out.push_back({r, c});                    // top copy
  for (auto [r, c] : inner) out.push_back({a + 3 + r, c});            // bottom-left
  for (auto [r, c] : inner) out.push_back({a + 3 + r, c + a + 3});    // bottom-right
  for (auto [r, c] : inner) out.push_back({2 * a + 2 - r, a + 1 - r + c});  // inverted middle
  return out;
}

}  // namespace detail

/// Four copies of T_a's kernel placed in T_{2a+3}: top, bottom-left,
/// bottom-right and an inverted middle copy. n odd, n >= 3, n != 2^m - 3.
inline KernelSet tri_recursive_kernel(const TriangularGrid& t) {
  const std::size_t n = t.size();
  if (n % 2 == 0 || n < 3) throw KernelError("recursive kernel needs an odd n >= 3, got " + std::to_string(n));
  if (is_tri_kernel_free_size(n)) {
    throw KernelError("T_" + std::to_string(n) + " has no even kernel (n = 2^m - 3)");
  }
  VertexSet s(t.graph().vertex_count());
  for (auto c : detail::tri_kernel_coords(n)) s.insert(t.vertex(c));
  return {t.vertex(0, 0), std::move(s)};
}

/// Parity kernel for even n, recursive kernel for odd n.
inline KernelSet tri_constructed_kernel(const TriangularGrid& t) {
  return t.size() % 2 == 0 ? tri_parity_kernel(t) : tri_recursive_kernel(t);
}

/// S = {(u_i, v_j) : i = j mod c} with c = gcd(m, n) > 1: the diagonal kernel
/// of Q(c,c) tiled over Q(m,n).
inline KernelSet torus_tiled_kernel(const ToroidalGrid& q) {
  const std::size_t c = std::gcd(q.rows(), q.cols());
  if (c == 1) {
    throw KernelError("Q(" + std::to_string(q.rows()) + "," + std::to_string(q.cols()) +
                      ") has gcd 1 and no even kernel");
  }
  VertexSet s(q.graph().vertex_count());
  for (std::size_t i = 0; i < q.rows(); ++i) {
    for (std::size_t j = 0; j < q.cols(); ++j) {
      if (i % c == j % c) s.insert(q.vertex(static_cast<long long>(i), static_cast<long long>(j)));
    }
  }
  return {q.vertex(0, 0), std::move(s)};
}

}  // namespace fgl
