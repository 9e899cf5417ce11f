#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <set>

#include "graphlim/error.hpp"
#include "graphlim/graph.hpp"
#include "support.hpp"

using namespace graphlim;

TEST(Graph, BasicConstruction) {
  SimpleGraph g(4);
  g.add_edge(0, 1);
  g.add_edge(2, 1);
  g.add_edge(1, 0);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_TRUE(g.has_edge(1, 2));
  EXPECT_EQ(g.degree(1), 2u);
  g.toggle_edge(0, 1);
  EXPECT_FALSE(g.has_edge(0, 1));
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_THROW(g.add_edge(2, 2), Error);
  EXPECT_THROW(g.add_edge(0, 9), Error);
  EXPECT_THROW(SimpleGraph(0), Error);
}

TEST(Graph, EdgesCanonicalAndSorted) {
  SimpleGraph g(5);
  g.add_edge(4, 0);
  g.add_edge(3, 1);
  g.add_edge(1, 0);
  auto e = g.edges();
  ASSERT_EQ(e.size(), 3u);
  EXPECT_EQ(e[0], (Edge{0, 1}));
  EXPECT_EQ(e[1], (Edge{0, 4}));
  EXPECT_EQ(e[2], (Edge{1, 3}));
}

TEST(Graph, NamedMotifs) {
  EXPECT_EQ(motif("K4").edge_count(), 6u);
  EXPECT_EQ(motif("C5").edge_count(), 5u);
  EXPECT_EQ(motif("P4").edge_count(), 3u);
  EXPECT_EQ(motif("S4").edge_count(), 3u);
  EXPECT_EQ(motif("E3").edge_count(), 0u);
  EXPECT_EQ(motif("paw").edge_count(), 4u);
  EXPECT_EQ(motif("diamond").edge_count(), 5u);
  EXPECT_THROW(motif("X7"), Error);
  EXPECT_THROW(motif("C2"), Error);
}

TEST(Graph, InducedKeepsOrder) {
  SimpleGraph g = path_graph(5);  // 0-1-2-3-4
  std::vector<std::size_t> nodes{1, 2, 4};
  SimpleGraph h = g.induced(nodes);
  EXPECT_EQ(h.node_count(), 3u);
  EXPECT_TRUE(h.has_edge(0, 1));
  EXPECT_FALSE(h.has_edge(1, 2));
}

TEST(Graph, RelabelAndComplement) {
  SimpleGraph g = star_graph(4);
  std::vector<std::size_t> perm{3, 2, 1, 0};
  SimpleGraph r = g.relabeled(perm);
  EXPECT_EQ(r.degree(3), 3u);
  SimpleGraph c = g.complement();
  EXPECT_EQ(c.edge_count(), 3u);
  EXPECT_EQ(c.complement(), g);
}

TEST(Graph, LabeledCodesRoundTrip) {
  Stream rng(SeedSpec(11));
  for (std::size_t k = 1; k <= 7; ++k) {
    SimpleGraph g = gltest::random_graph(rng, k, 0.5);
    EXPECT_EQ(graph_from_code(k, labeled_code(g)), g);
  }
  EXPECT_EQ(all_labeled_graphs(4).size(), 64u);
  EXPECT_EQ(labeled_code(complete_graph(3)), 7u);
}

TEST(Graph, MotifsWithoutIsolatedCounts) {
  // Unlabeled graphs without isolated nodes: 1 on 2 nodes, 2 on 3, 7 on 4.
  auto m = motifs_without_isolated(4);
  std::size_t by_size[5] = {0, 0, 0, 0, 0};
  for (const auto& g : m) {
    ++by_size[g.node_count()];
    for (std::size_t u = 0; u < g.node_count(); ++u) EXPECT_GT(g.degree(u), 0u);
  }
  EXPECT_EQ(by_size[2], 1u);
  EXPECT_EQ(by_size[3], 2u);
  EXPECT_EQ(by_size[4], 7u);
}

TEST(GraphIO, RoundTrip) {
  Stream rng(SeedSpec(3));
  for (int t = 0; t < 20; ++t) {
    SimpleGraph g = gltest::random_graph(rng, 1 + rng.below(30), 0.3);
    EXPECT_EQ(parse_graph_text(graph_to_text(g)), g);
  }
  auto path = std::filesystem::temp_directory_path() / "graphlim_io_test.graph";
  SimpleGraph g = cycle_graph(7);
  save_graph_file(g, path.string());
  EXPECT_EQ(load_graph_file(path.string()), g);
  std::filesystem::remove(path);
}

TEST(GraphIO, LineNumberedErrors) {
  try {
    parse_graph_text("# comment\n3\n0 1\n1 x\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::parse);
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos);
  }
  EXPECT_THROW(parse_graph_text("3\n0 3\n"), Error);
  EXPECT_THROW(parse_graph_text("3\n1 1\n"), Error);
  EXPECT_THROW(parse_graph_text(""), Error);
  EXPECT_THROW(load_graph_file("/nonexistent/graph"), Error);
  EXPECT_EQ(parse_graph_text("3\n0 1\n1 0\n").edge_count(), 1u);
}

TEST(Graph, FromUpperRowsMatchesEdgeInsertion) {
  Stream rng(SeedSpec(14));
  for (std::size_t n : {1, 2, 63, 64, 65, 130, 200}) {
    SimpleGraph g = gltest::random_graph(rng, n, 0.3);
    const std::size_t words = g.words_per_row();
    std::vector<std::uint64_t> bits(n * words, 0);
    for (const Edge& e : g.edges()) bits[e.u * words + e.v / 64] |= 1ULL << (e.v % 64);
    SimpleGraph h = SimpleGraph::from_upper_rows(n, bits);
    EXPECT_EQ(h, g);
    EXPECT_EQ(h.edge_count(), g.edge_count());
  }
  std::vector<std::uint64_t> lower(2, 0);
  lower[1] = 1;  // row 1 holding node 0
  EXPECT_THROW(SimpleGraph::from_upper_rows(2, lower), Error);
}
