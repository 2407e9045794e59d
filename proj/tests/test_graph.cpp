#include <gtest/gtest.h>

#include "sandlab/sandlab.hpp"

using namespace sandlab;

TEST(Digraph, CompleteOnThree) {
  Digraph g = gen::complete(3);
  EXPECT_EQ(g.vertex_count(), 3u);
  EXPECT_EQ(g.edge_count(), 6u);
  for (Vertex v = 0; v < 3; ++v) {
    EXPECT_EQ(g.out_degree(v), 2);
    EXPECT_EQ(g.in_degree(v), 2);
  }
  EXPECT_FALSE(g.sink());
}

TEST(Digraph, ZeroGraph) {
  Digraph g = Digraph::build(3, {{0, 1}, {0, 2}, {1, 0}, {1, 2}}, Vertex{2});
  EXPECT_EQ(g, gen::complete_with_sink(3));
  EXPECT_EQ(g.sink(), Vertex{2});
  EXPECT_TRUE(g.is_sink(2));
  EXPECT_EQ(g.out_edge(1, 1), 3);
  EXPECT_EQ(g.slot_of(3), 1);
  EXPECT_EQ(g.head(3), 2);
}

TEST(Digraph, SingleVertex) {
  Digraph g = Digraph::build(1, {}, Vertex{0});
  EXPECT_EQ(g.vertex_count(), 1u);
  EXPECT_EQ(g.edge_count(), 0u);
  auto info = classify(g);
  EXPECT_TRUE(info.has_global_sink);
}

TEST(Digraph, RejectsBadInput) {
  EXPECT_THROW(Digraph::build(2, {{0, 5}}), InvalidInput);
  EXPECT_THROW(Digraph::build(2, {{0, 1}, {1, 0}}, Vertex{1}), InvalidInput);
  EXPECT_THROW(Digraph::build(2, {{0, 1}}, Vertex{4}), InvalidInput);
}

TEST(Digraph, ParallelEdgesAggregateIntoArcs) {
  Digraph g = Digraph::build(3, {{0, 1}, {0, 2}, {0, 1}, {1, 2}}, Vertex{2});
  EXPECT_EQ(g.multiplicity(0, 1), 2);
  EXPECT_EQ(g.multiplicity(0, 2), 1);
  ASSERT_EQ(g.arcs(0).size(), 2u);
  EXPECT_EQ(g.arcs(0)[0].head, 1);
  EXPECT_EQ(g.arcs(0)[0].count, 2);
}

TEST(Digraph, WithOutOrderPermutesSlots) {
  Digraph g = gen::complete_with_sink(3);
  Digraph h = with_out_order(g, {{1, 0}, {1, 0}, {}});
  EXPECT_EQ(h.out_heads(0)[0], 2);
  EXPECT_EQ(h.out_heads(0)[1], 1);
  EXPECT_EQ(h.sink(), g.sink());
  EXPECT_THROW(with_out_order(g, {{0}, {1, 0}, {}}), InvalidInput);
}

TEST(Laplacian, ZeroGraph) {
  EXPECT_EQ(reduced_laplacian(gen::complete_with_sink(3)), (IntegerMatrix{{2, -1}, {-1, 2}}));
}

TEST(Laplacian, SinkEdgesAndSelfLoops) {
  Digraph k = Digraph::build(2, {{0, 1}, {0, 1}, {0, 1}}, Vertex{1});
  EXPECT_EQ(reduced_laplacian(k), (IntegerMatrix{{3}}));
  Digraph loop = Digraph::build(2, {{0, 0}}, Vertex{1});
  EXPECT_EQ(reduced_laplacian(loop), (IntegerMatrix{{0}}));
  IntegerMatrix full = laplacian(Digraph::build(2, {{0, 0}, {0, 1}, {1, 0}}));
  EXPECT_EQ(full, (IntegerMatrix{{1, -1}, {-1, 1}}));
}

TEST(Classify, ZeroGraph) {
  auto info = classify(gen::complete_with_sink(3));
  EXPECT_TRUE(info.has_global_sink);
  EXPECT_EQ(info.global_sink, Vertex{2});
  EXPECT_TRUE(info.eulerian_with_sink);
  EXPECT_FALSE(info.strongly_connected);
}

TEST(Classify, DirectedCycle) {
  auto info = classify(gen::directed_cycle(3));
  EXPECT_TRUE(info.strongly_connected);
  EXPECT_TRUE(info.eulerian);
  EXPECT_FALSE(info.has_global_sink);
  EXPECT_FALSE(info.bidirected);
}

TEST(Classify, UnreachableSink) {
  auto info = classify(Digraph::build(2, {}, Vertex{1}));
  EXPECT_FALSE(info.has_global_sink);
}

TEST(Classify, BidirectedFamilies) {
  EXPECT_TRUE(classify(gen::grid_bidirected(3, 4)).bidirected);
  EXPECT_TRUE(classify(gen::grid_wired(3)).bidirected_with_sink);
  EXPECT_TRUE(classify(gen::path_bidirected(4)).bidirected_with_sink);
  EXPECT_FALSE(classify(gen::directed_torus(3)).bidirected_with_sink);
  EXPECT_TRUE(classify(gen::directed_torus(3)).eulerian_with_sink);
}

TEST(Generators, GridWiredTwo) {
  Digraph g = gen::grid_wired(2);
  EXPECT_EQ(g.vertex_count(), 5u);
  EXPECT_EQ(g.sink(), Vertex{4});
  for (Vertex v = 0; v < 4; ++v) {
    EXPECT_EQ(g.out_degree(v), 4);
    EXPECT_EQ(g.multiplicity(v, 4), 2);
  }
  EXPECT_EQ(g.coord(3), (Coord{1, 1}));
  EXPECT_FALSE(g.coord(4));
}

TEST(Generators, TorusTwo) {
  Digraph g = gen::directed_torus(2);
  EXPECT_EQ(g.vertex_count(), 4u);
  EXPECT_EQ(g.sink(), Vertex{0});
  for (Vertex v = 1; v < 4; ++v) EXPECT_EQ(g.out_degree(v), 2);
}

TEST(Generators, DiskWired) {
  Digraph g = gen::disk_wired(5);
  // lattice points with x^2 + y^2 < 6.25: 21 of them, plus the sink
  EXPECT_EQ(g.vertex_count(), 22u);
  for (Vertex v = 0; v < 21; ++v) EXPECT_EQ(g.out_degree(v), 4);
  EXPECT_TRUE(classify(g).bidirected_with_sink);
}

TEST(Generators, ByName) {
  EXPECT_EQ(gen::generate("grid-wired", {3}), gen::grid_wired(3));
  EXPECT_EQ(gen::generate("grid", {2, 3}), gen::grid_bidirected(2, 3));
  EXPECT_THROW(gen::generate("wheel", {3}), InvalidInput);
  EXPECT_THROW(gen::generate("torus", {3, 4}), InvalidInput);
  EXPECT_THROW(gen::generate("cycle", {0}), InvalidInput);
}

TEST(Generators, WithSinkDropsOutEdges) {
  Digraph g = with_sink(gen::complete(4), 0);
  EXPECT_EQ(g.out_degree(0), 0);
  EXPECT_EQ(g.edge_count(), 9u);
  EXPECT_EQ(g.sink(), Vertex{0});
}
