#include <gtest/gtest.h>

#include <random>

#include "fgl/engine.hpp"
#include "fgl/families.hpp"

using namespace fgl;

TEST(Engine, InitialState) {
  auto st = initial_state(cycle(3), 0, Variant::Feedback);
  EXPECT_EQ(st.token, 0U);
  EXPECT_EQ(st.mover, Player::Alice);
  EXPECT_EQ(st.moves_made(), 0U);
  EXPECT_FALSE(st.winner);
  EXPECT_FALSE(st.previous_token());
  EXPECT_EQ(legal_moves(st), (std::vector<EdgeId>{0, 2}));
}

TEST(Engine, InitialStateErrors) {
  EXPECT_THROW(initial_state(cycle(3), 3, Variant::Feedback), EngineError);
  EXPECT_THROW(initial_state(Graph::from_edges(4, {{0, 1}, {2, 3}}), 0, Variant::Feedback), EngineError);
  EXPECT_THROW(initial_state(cycle(3), 0, Variant::EdgeGeoDirected), EngineError);
  auto dir = std::make_shared<const Board>(2, std::vector<std::pair<VertexId, VertexId>>{{0, 1}}, true);
  EXPECT_THROW(initial_state(dir, 0, Variant::Feedback), EngineError);
  EXPECT_THROW(initial_state(nullptr, 0, Variant::Feedback), EngineError);
}

TEST(Engine, BoardLimits) {
  std::vector<std::pair<VertexId, VertexId>> many;
  for (int i = 0; i < 129; ++i) many.emplace_back(0, 1);
  EXPECT_THROW(Board(2, many, false), EngineError);
  many.pop_back();
  EXPECT_NO_THROW(Board(2, many, false));
  EXPECT_THROW(Board(2, {{1, 1}}, false), EngineError);
}

TEST(Engine, TriangleFeedbackReturnWins) {
  auto st = initial_state(cycle(3), 0, Variant::Feedback);
  auto [a, o1] = apply_move(st, 0);
  EXPECT_EQ(o1, MoveOutcome::Ongoing);
  EXPECT_EQ(a.token, 1U);
  EXPECT_EQ(a.previous_token(), std::optional<VertexId>{0});
  auto [b, o2] = apply_move(a, 1);
  EXPECT_EQ(o2, MoveOutcome::Ongoing);
  auto [c, o3] = apply_move(b, 2);
  EXPECT_EQ(o3, MoveOutcome::WinBackToStart);
  EXPECT_EQ(c.winner, std::optional<Player>{Player::Alice});
  EXPECT_TRUE(c.finished());
  EXPECT_TRUE(legal_moves(c).empty());
  EXPECT_THROW(apply_move(c, 0), EngineError);
}

TEST(Engine, TriangleEdgeGeographyEndsByIsolation) {
  auto st = initial_state(cycle(3), 0, Variant::EdgeGeoUndirected);
  auto [end, last] = replay(st, {0, 1, 2});
  EXPECT_EQ(last, MoveOutcome::WinIsolation);
  EXPECT_EQ(end.winner, std::optional<Player>{Player::Alice});
}

TEST(Engine, PathStrandsTheToken) {
  auto g = Graph::from_edges(3, {{0, 1}, {1, 2}});
  auto st = initial_state(g, 0, Variant::Feedback);
  auto [a, o1] = apply_move(st, 0);
  EXPECT_EQ(o1, MoveOutcome::Ongoing);
  auto [b, o2] = apply_move(a, 1);
  EXPECT_EQ(o2, MoveOutcome::WinIsolation);
  EXPECT_EQ(b.winner, std::optional<Player>{Player::Bob});
}

TEST(Engine, DirectedIsolationMeansNoOutArcs) {
  auto board = std::make_shared<const Board>(2, std::vector<std::pair<VertexId, VertexId>>{{0, 1}, {1, 0}}, true);
  auto st = initial_state(board, 0, Variant::EdgeGeoDirected);
  EXPECT_EQ(legal_moves(st), std::vector<EdgeId>{0});
  auto [a, o1] = apply_move(st, 0);
  EXPECT_EQ(o1, MoveOutcome::Ongoing);
  EXPECT_EQ(legal_moves(a), std::vector<EdgeId>{1});
  auto [b, o2] = apply_move(a, 1);
  EXPECT_EQ(o2, MoveOutcome::WinIsolation);
  EXPECT_EQ(b.winner, std::optional<Player>{Player::Bob});

  // 0 -> 1 with 1 a sink: the single move wins at once.
  auto sink = std::make_shared<const Board>(2, std::vector<std::pair<VertexId, VertexId>>{{0, 1}}, true);
  auto [c, o3] = apply_move(initial_state(sink, 0, Variant::EdgeGeoDirected), 0);
  EXPECT_EQ(o3, MoveOutcome::WinIsolation);
  EXPECT_EQ(c.winner, std::optional<Player>{Player::Alice});
}

TEST(Engine, IllegalMovesRejected) {
  auto st = initial_state(cycle(4), 0, Variant::Feedback);
  EXPECT_THROW(apply_move(st, 1), EngineError);
  EXPECT_THROW(apply_move(st, 99), EngineError);
  EXPECT_THROW(replay(st, {0, 0}), EngineError);
}

TEST(Engine, IsolatedStartLosesForAlice) {
  auto st = initial_state(Graph::from_edges(1, {}), 0, Variant::Feedback);
  EXPECT_TRUE(st.finished());
  EXPECT_EQ(decided_winner(st), std::optional<Player>{Player::Bob});
}

TEST(Engine, ParallelEdgesAreSeparateMoves) {
  auto g = Graph::from_edges(2, {{0, 1}, {0, 1}, {0, 1}, {0, 1}});
  auto st = initial_state(g, 0, Variant::Feedback);
  auto [a, o] = apply_move(st, 2);
  EXPECT_EQ(o, MoveOutcome::Ongoing);
  EXPECT_EQ(legal_moves(a), (std::vector<EdgeId>{0, 1, 3}));
  EXPECT_EQ(classify_move(*a.board, 0, Variant::Feedback, a.removed, a.token, 0), MoveOutcome::WinBackToStart);
}

TEST(Engine, StringForms) {
  EXPECT_EQ(to_string(Variant::Feedback), "feedback");
  EXPECT_EQ(to_string(Variant::EdgeGeoUndirected), "edge-geo");
  EXPECT_EQ(to_string(Variant::EdgeGeoDirected), "directed-edge-geo");
  EXPECT_EQ(parse_variant("edge-geo"), Variant::EdgeGeoUndirected);
  EXPECT_THROW(parse_variant("chess"), std::invalid_argument);
  EXPECT_EQ(to_string(Player::Bob), "BOB");
  EXPECT_EQ(to_string(MoveOutcome::WinIsolation), "ISOLATION");
  EXPECT_EQ(opponent(Player::Alice), Player::Bob);
}

// Random playouts on Eulerian graphs: away from s the token always has an odd
// number of unused edges, so the game can only end by a return to s.
TEST(EngineInvariants, EulerianFeedbackNeverIsolates) {
  std::mt19937 rng(7);
  std::vector<Graph> graphs{TriangularGrid(3).graph(), TriangularGrid(5).graph(), ToroidalGrid(3, 4).graph(),
                            ToroidalGrid(2, 3).graph(), GkGraph(2).graph()};
  for (const auto& g : graphs) {
    for (int trial = 0; trial < 300; ++trial) {
      const auto s = static_cast<VertexId>(rng() % g.vertex_count());
      auto st = initial_state(g, s, Variant::Feedback);
      MoveOutcome last = MoveOutcome::Ongoing;
      std::size_t plies = 0;
      while (!st.finished()) {
        if (st.token != s) {
          ASSERT_EQ(st.available().count() % 2, 1U);
        } else {
          ASSERT_EQ(st.available().count() % 2, 0U);
        }
        auto moves = legal_moves(st);
        std::tie(st, last) = apply_move(st, moves[rng() % moves.size()]);
        ++plies;
        ASSERT_EQ(st.moves_made(), plies);
        ASSERT_EQ(st.mover, plies % 2 == 0 ? Player::Alice : Player::Bob);
      }
      EXPECT_EQ(last, MoveOutcome::WinBackToStart);
      EXPECT_EQ(st.token, s);
      EXPECT_EQ(st.winner, std::optional<Player>{plies % 2 == 1 ? Player::Alice : Player::Bob});
    }
  }
}

// On a bipartite graph every return to s takes an even number of moves, so
// the winner of any finished line is Bob.
TEST(EngineInvariants, BipartiteReturnsAreEven) {
  std::mt19937 rng(11);
  for (const auto& g : {cycle(6), ToroidalGrid(2, 4).graph(), ToroidalGrid(4, 4).graph()}) {
    for (int trial = 0; trial < 200; ++trial) {
      auto st = initial_state(g, 0, Variant::Feedback);
      while (!st.finished()) {
        auto moves = legal_moves(st);
        st = apply_move(st, moves[rng() % moves.size()]).first;
      }
      EXPECT_EQ(decided_winner(st), std::optional<Player>{Player::Bob});
    }
  }
}
