#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "hamperm/graph.hpp"
#include "hamperm/random.hpp"

using namespace hamperm;

namespace {

std::string data(const std::string& name) { return std::string(HAMPERM_DATA_DIR) + "/" + name; }

// All hamilton circuits of g starting at vertex 1 (both directions for graphs).
std::set<std::vector<int>> brute_circuits(const Graph& g) {
  std::vector<int> rest(g.n() - 1);
  std::iota(rest.begin(), rest.end(), 2);
  std::set<std::vector<int>> out;
  do {
    std::vector<int> seq{1};
    seq.insert(seq.end(), rest.begin(), rest.end());
    if (!verify_circuit(g, seq)) out.insert(seq);
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

// Circuits of the contracted graph, expanded and rotated to start at base vertex 1.
std::set<std::vector<int>> contracted_circuits(const ContractedGraph& cg) {
  int m = cg.m();
  std::set<std::vector<int>> out;
  std::vector<int> ids(m - 1);
  std::iota(ids.begin(), ids.end(), 2);
  do {
    for (int mask = 0; mask < (1 << m); ++mask) {
      std::vector<OrientedVertex> c{{1, 1}};
      for (int x : ids) c.push_back({x, 1});
      bool ok = true;
      for (int i = 0; i < m; ++i) {
        if (mask >> i & 1) {
          if (!cg.is_r(c[i].id) || cg.directed()) ok = false;
          c[i].sign = -1;
        }
      }
      if (!ok) continue;
      for (int i = 0; i < m && ok; ++i)
        ok = cg.arc(c[i].id, c[i].sign, c[(i + 1) % m].id, c[(i + 1) % m].sign);
      if (!ok) continue;
      auto seq = expand_sequence(cg, c);
      EXPECT_FALSE(verify_circuit(cg.base(), seq).has_value());
      std::rotate(seq.begin(), std::find(seq.begin(), seq.end(), 1), seq.end());
      out.insert(seq);
    }
  } while (std::next_permutation(ids.begin(), ids.end()));
  return out;
}

}  // namespace

TEST(Graph, BasicsAndErrors) {
  Graph g(4);
  g.add_edge(1, 2);
  g.add_edge(2, 1);
  g.add_edge(2, 3);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_TRUE(g.has_arc(2, 1));
  EXPECT_EQ(g.min_degree(), 0);
  EXPECT_THROW(g.add_edge(3, 3), std::invalid_argument);
  EXPECT_THROW(g.add_edge(0, 3), std::invalid_argument);
  EXPECT_TRUE(g.remove_edge(1, 2));
  EXPECT_FALSE(g.has_arc(2, 1));

  Graph d(3, true);
  d.add_edge(1, 2);
  EXPECT_TRUE(d.has_arc(1, 2));
  EXPECT_FALSE(d.has_arc(2, 1));
  EXPECT_EQ(d.in(2), std::vector<int>{1});
}

TEST(Graph, ParseFormatRoundTrip) {
  auto g = read_graph_file(data("ex15.graph"));
  EXPECT_EQ(g.n(), 25);
  EXPECT_TRUE(g.has_arc(3, 21));
  EXPECT_EQ(parse_graph(format_graph(g)), g);
  auto d = k_in_k_out(12, 2, 5);
  EXPECT_EQ(parse_graph(format_graph(d)), d);
  EXPECT_EQ(parse_graph("digraph 3\n1 2\n2 3  # arc\n3 1\n").edge_count(), 3u);
}

TEST(Graph, ParseErrorsNameTheLine) {
  try {
    parse_graph("graph 3\n1: 2\n2: 9\n");
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_EQ(std::string(e.what()).rfind("line 3:", 0), 0u) << e.what();
  }
  EXPECT_THROW(parse_graph("1 2\n"), std::invalid_argument);
  EXPECT_THROW(parse_graph("graph 3\n1 x\n"), std::invalid_argument);
}

TEST(Contract, WorkedGraphHasThreeRVertices) {
  auto g = read_graph_file(data("ex15.graph"));
  auto cg = ContractedGraph::contract(g);
  EXPECT_EQ(cg.m(), 19);
  std::set<std::string> rs;
  for (int x = 1; x <= cg.m(); ++x)
    if (cg.is_r(x)) rs.insert(cg.label(x));
  EXPECT_EQ(rs, (std::set<std::string>{"2-12-11", "4-6-9", "10-15-21"}));
  EXPECT_EQ(cg.find_label("9-6-4"), std::make_pair(cg.owner(4), -1));
  EXPECT_EQ(cg.label(cg.owner(15), -1), "21-15-10");
  // Interior vertices keep only their path edges.
  EXPECT_EQ(cg.reduced().degree(6), 2);
}

TEST(Contract, ListingParsesToTheSameContraction) {
  auto g = read_graph_file(data("ex13.graph"));
  auto cg = ContractedGraph::contract(g);
  EXPECT_EQ(cg.m(), 19);
  auto [x, s] = cg.find_label("4-6-9");
  EXPECT_EQ(s, 1);
  // "1: 7, 20, 9-6-4" attaches 1 to the 9 end.
  EXPECT_TRUE(cg.arc(cg.owner(1), 1, x, -1));
  EXPECT_FALSE(cg.arc(cg.owner(1), 1, x, 1));
  EXPECT_EQ(cg.degree(cg.find_label("3").first, 1), 5);
  for (int v = 1; v <= cg.m(); ++v) {
    if (!cg.is_r(v)) EXPECT_GE(cg.degree(v, 1), 3) << cg.label(v);
  }
}

TEST(Contract, MinDegreeThreeIsIdentity) {
  Graph k(5);
  for (int u = 1; u <= 5; ++u)
    for (int v = u + 1; v <= 5; ++v) k.add_edge(u, v);
  auto cg = ContractedGraph::contract(k);
  EXPECT_EQ(cg.m(), 5);
  EXPECT_EQ(cg.reduced(), k);
}

TEST(Contract, ShortcutEdgeIsDeleted) {
  Graph g(6);
  for (auto [u, v] : std::vector<std::pair<int, int>>{{1, 2}, {2, 3}, {3, 4}, {1, 4}, {1, 5}, {1, 6}, {4, 5}, {4, 6}, {5, 6}})
    g.add_edge(u, v);
  auto cg = ContractedGraph::contract(g);
  EXPECT_EQ(cg.m(), 3);
  EXPECT_EQ(cg.path(1), (std::vector<int>{1, 2, 3, 4}));
  EXPECT_FALSE(cg.reduced().has_arc(1, 4));
  auto c = parse_contracted_circuit(cg, "(1-2-3-4 5 6)");
  EXPECT_EQ(expand_circuit(cg, c), (std::vector<int>{1, 2, 3, 4, 5, 6}));
}

TEST(Contract, ForcedCycleAndFailures) {
  Graph ring(5);
  for (int v = 1; v <= 5; ++v) ring.add_edge(v, v % 5 + 1);
  auto cg = ContractedGraph::contract(ring);
  ASSERT_TRUE(cg.forced_circuit().has_value());
  EXPECT_FALSE(verify_circuit(ring, *cg.forced_circuit()).has_value());

  Graph split(7);
  for (auto [u, v] : std::vector<std::pair<int, int>>{{1, 2}, {2, 3}, {3, 1}, {4, 5}, {4, 6}, {4, 7}, {5, 6}, {5, 7}, {6, 7}})
    split.add_edge(u, v);
  EXPECT_THROW(ContractedGraph::contract(split), NotHamiltonian);

  Graph pendant(4);
  for (auto [u, v] : std::vector<std::pair<int, int>>{{1, 2}, {2, 3}, {3, 1}, {3, 4}}) pendant.add_edge(u, v);
  EXPECT_THROW(ContractedGraph::contract(pendant), NotHamiltonian);

  // Vertex 1 is the middle of two forced paths at once (three degree-2 neighbours).
  Graph star(7);
  for (auto [u, v] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {1, 4}, {2, 5}, {3, 6}, {4, 7}, {5, 6}, {6, 7}, {5, 7}})
    star.add_edge(u, v);
  EXPECT_THROW(ContractedGraph::contract(star), NotHamiltonian);
}

TEST(Contract, DirectedForcedPath) {
  Graph d(5, true);
  d.add_edge(1, 2);
  d.add_edge(2, 3);
  for (int u : {1, 3, 4, 5})
    for (int v : {1, 3, 4, 5})
      if (u != v) d.add_edge(u, v);
  auto cg = ContractedGraph::contract(d);
  EXPECT_EQ(cg.m(), 3);
  EXPECT_EQ(cg.path(1), (std::vector<int>{1, 2, 3}));
  EXPECT_FALSE(cg.reduced().has_arc(3, 1));
  EXPECT_FALSE(cg.reduced().has_arc(1, 4));
  EXPECT_THROW(cg.find_label("3-2-1"), std::invalid_argument);
  auto c = parse_contracted_circuit(cg, "(1-2-3 4 5)");
  EXPECT_EQ(expand_circuit(cg, c), (std::vector<int>{1, 2, 3, 4, 5}));
}

TEST(Contract, TrivialMatchesBase) {
  auto g = read_graph_file(data("ex15.graph"));
  auto cg = ContractedGraph::trivial(g);
  EXPECT_EQ(cg.m(), 25);
  for (int v = 1; v <= 25; ++v) EXPECT_EQ(cg.degree(v, 1), g.degree(v));
}

TEST(Contract, PreservesTheCircuitSetOnRandomGraphs) {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    Graph g = seed % 2 ? boll_graph(8, seed) : k_in_k_out(7, 1, seed);
    auto truth = brute_circuits(g);
    try {
      auto cg = ContractedGraph::contract(g);
      if (cg.forced_circuit()) {
        ASSERT_EQ(truth.size(), g.directed() ? 1u : 2u);
        continue;
      }
      auto got = contracted_circuits(cg);
      if (!g.directed()) {
        // Contracted circuits are listed in one direction only when vertex 1 is plain.
        std::set<std::vector<int>> both;
        for (auto s : got) {
          both.insert(s);
          std::reverse(s.begin() + 1, s.end());
          both.insert(s);
        }
        got = both;
      }
      EXPECT_EQ(got, truth) << format_graph(g);
      ++checked;
    } catch (const NotHamiltonian&) {
      EXPECT_TRUE(truth.empty()) << format_graph(g);
    }
  }
  EXPECT_GT(checked, 10);
}

TEST(Expand, WorkedCircuitAndMissingEdge) {
  auto g = read_graph_file(data("ex15.graph"));
  auto cg = ContractedGraph::contract(g);
  auto good = parse_contracted_circuit(cg, "(1 9-6-4 13 18 8 5 16 11-12-2 22 17 3 14 19 23 20 24 21-15-10 25 7)");
  auto seq = expand_circuit(cg, good);
  EXPECT_EQ(seq.size(), 25u);
  EXPECT_EQ(format_contracted_circuit(cg, good), "(1 9-6-4 13 18 8 5 16 11-12-2 22 17 3 14 19 23 20 24 21-15-10 25 7)");

  auto t = ContractedGraph::trivial(g);
  auto bad = parse_contracted_circuit(t, "(1 9 6 4 13 18 8 5 16 11 12 2 22 17 3 14 19 23 20 24 21 15 10 7 25)");
  try {
    expand_circuit(t, bad);
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "missing edge 10-7");
  }
  EXPECT_THROW(parse_contracted_circuit(t, "(1 2 3)"), std::invalid_argument);
  EXPECT_THROW(parse_contracted_circuit(t, "(1 1 2)"), std::invalid_argument);
}

TEST(Expand, BothOrientationsOfAnRVertex) {
  // 2 has degree 2; the r-vertex 1-2-3 may be read either way when 1 and 3 see the same vertices.
  Graph g(5);
  for (auto [u, v] : std::vector<std::pair<int, int>>{{1, 2}, {2, 3}, {1, 4}, {1, 5}, {3, 4}, {3, 5}, {4, 5}}) g.add_edge(u, v);
  auto cg = ContractedGraph::contract(g);
  auto fwd = parse_contracted_circuit(cg, "(1-2-3 4 5)");
  auto rev = parse_contracted_circuit(cg, "(3-2-1 4 5)");
  EXPECT_NO_THROW(expand_circuit(cg, fwd));
  EXPECT_NO_THROW(expand_circuit(cg, rev));
  EXPECT_EQ(expand_circuit(cg, rev), (std::vector<int>{3, 2, 1, 4, 5}));
}
