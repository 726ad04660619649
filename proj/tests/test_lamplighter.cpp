#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace wreath;

namespace {
LampGraph lamp(const std::string& g, const std::string& h) {
  return LampGraph(builtin_graph(parse_graph_shorthand(g)), finite_graph(parse_graph_shorthand(h)));
}

// Random lamp vertex reached by a random walk from the root.
LampVertex random_vertex(const LampGraph& lg, std::mt19937_64& rng, int steps) {
  LampVertex v = lg.root();
  for (int k = 0; k < steps; ++k) {
    auto nb = lg.neighbors(v);
    v = nb[std::uniform_int_distribution<std::size_t>(0, nb.size() - 1)(rng)];
  }
  return v;
}
}  // namespace

TEST(Lamplighter, K2WreathK2IsTheEightCycle) {
  LampGraph lg = lamp("complete:2", "complete:2");
  // Brute force over all (c0, c1, pos) with moves flipping pos and switches
  // flipping the lamp under the lamplighter.
  std::set<std::pair<std::string, std::string>> expected;
  auto enc = [&](int c0, int c1, int pos) {
    Configuration c(VertexId("0"));
    c.set(VertexId("0"), VertexId(std::to_string(c0)));
    c.set(VertexId("1"), VertexId(std::to_string(c1)));
    return LampVertex{c, VertexId(std::to_string(pos))}.encode().str();
  };
  for (int c0 = 0; c0 < 2; ++c0)
    for (int c1 = 0; c1 < 2; ++c1)
      for (int p = 0; p < 2; ++p) {
        std::string u = enc(c0, c1, p);
        std::string mv = enc(c0, c1, 1 - p);
        std::string sw = p == 0 ? enc(1 - c0, c1, p) : enc(c0, 1 - c1, p);
        expected.insert(std::minmax(u, mv));
        expected.insert(std::minmax(u, sw));
      }
  Ball b = ball(lg.oracle(), lg.root().encode(), 4);
  EXPECT_EQ(b.graph.size(), 8u);
  std::set<std::pair<std::string, std::string>> got;
  for (auto [i, j] : b.graph.edges()) got.insert(std::minmax(b.graph.vertex(i).str(), b.graph.vertex(j).str()));
  EXPECT_EQ(got, expected);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(b.graph.degree(i), 2u);
  EXPECT_TRUE(is_connected(b.graph));
}

TEST(Lamplighter, RootNeighborsOnLine) {
  LampGraph lg = lamp("line", "complete:2");
  auto nb = lg.neighbors(lg.root());
  ASSERT_EQ(nb.size(), 3u);
  EXPECT_EQ(nb[0].encode().str(), "+1 |");
  EXPECT_EQ(nb[1].encode().str(), "-1 |");
  EXPECT_EQ(nb[2].encode().str(), "0 | 0:1");
}

TEST(Lamplighter, DegreeFormula) {
  std::mt19937_64 rng(11);
  for (auto [g, h] : {std::pair{"line", "complete:2"}, std::pair{"tree:3", "path:3"}, std::pair{"grid:2", "cycle:5"}}) {
    LampGraph lg = lamp(g, h);
    for (int k = 0; k < 70; ++k) {
      LampVertex v = random_vertex(lg, rng, 40);
      const std::size_t expect = lg.base().neighbors(v.pos).size() + lg.lamps().degree(lg.lamps().at(v.config.state(v.pos)));
      ASSERT_EQ(lg.neighbors(v).size(), expect);
    }
  }
}

TEST(Lamplighter, SwitchIsAnInvolutionAndEncodingRoundTrips) {
  std::mt19937_64 rng(5);
  LampGraph lg = lamp("grid:2", "cycle:4");
  for (int k = 0; k < 100; ++k) {
    LampVertex v = random_vertex(lg, rng, 30);
    EXPECT_EQ(lg.decode(v.encode()), v);
    for (const auto& w : lg.neighbors(v)) {
      auto kind = lg.classify_edge(v, w);
      if (auto* s = std::get_if<Switch>(&kind)) {
        EXPECT_EQ(lg.switched(w, s->from_state), v);
      }
      auto back = lg.neighbors(w);
      EXPECT_NE(std::find(back.begin(), back.end(), v), back.end());
    }
  }
}

TEST(Lamplighter, ClassifyEdge) {
  LampGraph lg = lamp("line", "complete:2");
  LampVertex a = lg.at(VertexId("0")), b = lg.at(VertexId("+1"));
  EXPECT_TRUE(std::holds_alternative<Move>(lg.classify_edge(a, b)));
  auto s = lg.classify_edge(a, lg.switched(a, VertexId("1")));
  ASSERT_TRUE(std::holds_alternative<Switch>(s));
  EXPECT_EQ(std::get<Switch>(s).from_state.str(), "0");
  EXPECT_EQ(std::get<Switch>(s).to_state.str(), "1");
  EXPECT_THROW(lg.classify_edge(a, a), InvalidArgument);
  EXPECT_THROW(lg.classify_edge(a, lg.at(VertexId("+2"))), InvalidArgument);
  EXPECT_EQ(base_of(b).str(), "+1");
}

TEST(Lamplighter, RejectsBadInput) {
  EXPECT_THROW(lamp("line", "path:1"), InvalidArgument);
  EXPECT_THROW(LampGraph(builtin_graph(parse_graph_shorthand("line")), finite_graph(parse_graph_shorthand("complete:2")), VertexId("7")),
               InvalidArgument);
  LampGraph lg = lamp("line", "complete:2");
  EXPECT_THROW(lg.decode(VertexId("0 | 0:0")), InvalidArgument);  // default state listed
  EXPECT_THROW(lg.decode(VertexId("0")), InvalidArgument);
}
