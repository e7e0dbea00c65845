#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>

#include "fgl/families.hpp"

using namespace fgl;

namespace {

using EdgeBag = std::map<std::pair<VertexId, VertexId>, int>;

EdgeBag bag(const Graph& g) {
  EdgeBag out;
  for (auto [a, b] : g.edges()) ++out[{std::min(a, b), std::max(a, b)}];
  return out;
}

bool is_automorphism(const Graph& g, const std::vector<VertexId>& perm) {
  EdgeBag mapped;
  for (auto [a, b] : g.edges()) {
    auto x = perm[a];
    auto y = perm[b];
    ++mapped[{std::min(x, y), std::max(x, y)}];
  }
  return mapped == bag(g);
}

}  // namespace

TEST(TriangularGrid, CountsMatchClosedForms) {
  for (std::size_t n = 1; n <= 12; ++n) {
    TriangularGrid t(n);
    EXPECT_EQ(t.graph().vertex_count(), (n + 1) * (n + 2) / 2);
    EXPECT_EQ(t.graph().edge_count(), 3 * n * (n + 1) / 2);
    EXPECT_TRUE(is_eulerian(t.graph()));
    EXPECT_TRUE(is_connected(t.graph()));
    EXPECT_LE(t.graph().max_degree(), 6U);
  }
}

TEST(TriangularGrid, AdjacencyFromCoordinates) {
  const std::size_t n = 6;
  TriangularGrid t(n);
  EdgeBag want;
  auto add = [&](std::size_t j, std::size_t k, std::size_t j2, std::size_t k2) {
    VertexId a = t.vertex(j, k);
    VertexId b = t.vertex(j2, k2);
    want[{std::min(a, b), std::max(a, b)}] = 1;
  };
  for (std::size_t j = 0; j <= n; ++j) {
    for (std::size_t k = 0; k <= j; ++k) {
      if (k + 1 <= j) add(j, k, j, k + 1);
      if (j + 1 <= n) {
        add(j, k, j + 1, k);
        add(j, k, j + 1, k + 1);
      }
    }
  }
  EXPECT_EQ(bag(t.graph()), want);
}

TEST(TriangularGrid, CornersHaveDegreeTwo) {
  for (std::size_t n : {2U, 5U, 9U}) {
    TriangularGrid t(n);
    std::size_t two = 0;
    for (VertexId v = 0; v < t.graph().vertex_count(); ++v) two += t.graph().degree(v) == 2 ? 1 : 0;
    EXPECT_EQ(two, 3U);
    EXPECT_EQ(t.graph().degree(t.vertex(0, 0)), 2U);
    EXPECT_EQ(t.graph().degree(t.vertex(n, n)), 2U);
  }
}

TEST(TriangularGrid, LabelsAndCoordinates) {
  TriangularGrid t(5);
  EXPECT_EQ(t.graph().label(t.vertex(3, 2)), "v^3_2");
  EXPECT_EQ(t.vertex(3, 2), 8U);
  EXPECT_EQ(t.coord(8), (TriCoord{3, 2}));
  for (VertexId v = 0; v < t.graph().vertex_count(); ++v) EXPECT_EQ(t.vertex(t.coord(v)), v);
  EXPECT_THROW(t.vertex(6, 0), std::out_of_range);
  EXPECT_THROW(t.vertex(2, 3), std::out_of_range);
}

TEST(TriangularGrid, MirrorIsAnAutomorphismFixingTheApex) {
  for (std::size_t n : {1U, 4U, 7U}) {
    TriangularGrid t(n);
    std::vector<VertexId> perm(t.graph().vertex_count());
    for (VertexId v = 0; v < perm.size(); ++v) perm[v] = t.mirror(v);
    EXPECT_TRUE(is_automorphism(t.graph(), perm));
    EXPECT_EQ(t.mirror(t.vertex(0, 0)), t.vertex(0, 0));
  }
}

TEST(ToroidalGrid, FourRegularWithClosedFormCounts) {
  for (std::size_t m = 2; m <= 6; ++m) {
    for (std::size_t n = 2; n <= 6; ++n) {
      ToroidalGrid q(m, n);
      EXPECT_EQ(q.graph().vertex_count(), m * n);
      EXPECT_EQ(q.graph().edge_count(), 2 * m * n);
      for (VertexId v = 0; v < m * n; ++v) EXPECT_EQ(q.graph().degree(v), 4U);
      EXPECT_TRUE(is_connected(q.graph()));
    }
  }
  EXPECT_THROW(ToroidalGrid(1, 4), GraphError);
}

TEST(ToroidalGrid, LengthTwoFactorsDoubleTheRungs) {
  ToroidalGrid q(2, 3);
  EXPECT_EQ(q.graph().edges_joining(q.vertex(0, 0), q.vertex(1, 0)).size(), 2U);
  EXPECT_EQ(q.graph().edges_joining(q.vertex(0, 0), q.vertex(0, 1)).size(), 1U);
  ToroidalGrid r(2, 2);
  EXPECT_EQ(r.graph().edges_joining(r.vertex(0, 0), r.vertex(0, 1)).size(), 2U);
}

TEST(ToroidalGrid, TranslationsAreAutomorphisms) {
  ToroidalGrid q(3, 5);
  for (long long a = 0; a < 3; ++a) {
    for (long long b = 0; b < 5; ++b) {
      std::vector<VertexId> perm(15);
      for (VertexId v = 0; v < 15; ++v) perm[v] = q.shift(v, a, b);
      EXPECT_TRUE(is_automorphism(q.graph(), perm));
    }
  }
  EXPECT_EQ(q.vertex(-1, -1), q.vertex(2, 4));
  EXPECT_EQ(q.graph().label(q.vertex(1, 4)), "(u_1,v_4)");
  EXPECT_EQ(q.coord(q.vertex(2, 3)), (TorusCoord{2, 3}));
}

TEST(GkGraph, StructureAndDegrees) {
  for (std::size_t k = 2; k <= 5; ++k) {
    GkGraph g(k);
    EXPECT_EQ(g.graph().vertex_count(), 1 + 6 * k);
    EXPECT_EQ(g.graph().edge_count(), 14 * k);
    EXPECT_EQ(g.graph().degree(g.s()), 4 * k);
    for (long long i = 0; i < static_cast<long long>(2 * k); ++i) {
      EXPECT_EQ(g.graph().degree(g.u(i)), 4U);
      EXPECT_EQ(g.graph().edges_joining(g.u(i), g.v(2 * i)).size(), 1U);
      EXPECT_EQ(g.graph().edges_joining(g.u(i), g.v(2 * i + 1)).size(), 1U);
      EXPECT_TRUE(g.is_u(g.u(i)));
    }
    for (long long j = 0; j < static_cast<long long>(4 * k); ++j) {
      EXPECT_EQ(g.graph().degree(g.v(j)), 4U);
      EXPECT_TRUE(g.is_v(g.v(j)));
      EXPECT_EQ(g.v_index(g.v(j)), static_cast<std::size_t>(j));
    }
    EXPECT_TRUE(is_eulerian(g.graph()));
    EXPECT_EQ(g.graph().label(g.s()), "s");
  }
  EXPECT_THROW(GkGraph(1), GraphError);
  EXPECT_EQ(GkGraph(2).graph().vertex_count(), 13U);
}

TEST(Cycle, Basic) {
  auto c = cycle(4);
  EXPECT_EQ(c.edge_count(), 4U);
  EXPECT_TRUE(bipartition(c).has_value());
  EXPECT_THROW(cycle(2), GraphError);
}
