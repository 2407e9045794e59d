#include <gtest/gtest.h>

#include <set>

#include "sandlab/random.hpp"
#include "sandlab/sandlab.hpp"

using namespace sandlab;

namespace {

ChipConfig chips(std::vector<Count> c) { return ChipConfig(std::move(c)); }

const FiringPolicy kPolicies[] = {FiringPolicy::Bulk, FiringPolicy::Fifo, FiringPolicy::Lifo, FiringPolicy::Random};

class ZeroGraph : public ::testing::Test {
 protected:
  Digraph g = gen::complete_with_sink(3);
  Sandpile pile{g};
};

}  // namespace

TEST(Fire, CompleteThree) {
  Digraph g = gen::complete(3);
  Sandpile pile(g);
  EXPECT_EQ(pile.fire(chips({3, 0, 0}), 0), chips({1, 1, 1}));
  EXPECT_THROW(pile.fire(chips({1, 0, 0}), 0), InvalidInput);
}

TEST(Fire, SelfLoopIsFixedPoint) {
  Digraph g = Digraph::build(2, {{0, 0}}, Vertex{1});
  Sandpile pile(g);
  EXPECT_EQ(pile.fire(chips({1, 0}), 0), chips({1, 0}));
}

TEST_F(ZeroGraph, FireSendsOneChipIntoTheSink) {
  EXPECT_EQ(pile.fire(chips({0, 2, 0}), 1), chips({1, 0, 0}));
}

TEST(Stabilize, CompleteThreeWithCap) {
  Digraph g = gen::complete(3);
  Sandpile pile(g);
  for (auto p : kPolicies) {
    auto r = pile.stabilize(chips({3, 0, 0}), {p, 1'000'000, 7});
    EXPECT_EQ(r.config, chips({1, 1, 1}));
    EXPECT_EQ(r.odometer.fires, (std::vector<Count>{1, 0, 0}));
    EXPECT_THROW(pile.stabilize(chips({4, 0, 0}), {p, 1'000'000, 7}), Nonterminating);
  }
  EXPECT_THROW(pile.stabilize(chips({3, 0, 0})), InvalidInput);
}

TEST_F(ZeroGraph, StabilizeByHand) {
  auto r = pile.stabilize(chips({2, 2, 0}));
  EXPECT_EQ(r.config, chips({1, 1, 0}));
  EXPECT_EQ(r.odometer.fires, (std::vector<Count>{1, 1, 0}));
  EXPECT_EQ(r.odometer.total_chip_moves, 4);
}

TEST_F(ZeroGraph, StabilizeRejectsBadConfigs) {
  EXPECT_THROW(pile.stabilize(chips({1, 1})), InvalidInput);
  EXPECT_THROW(pile.stabilize(chips({-1, 1, 0})), InvalidInput);
  EXPECT_THROW(pile.stabilize(chips({1, 1, 1})), InvalidInput);
}

TEST_F(ZeroGraph, TotalOverflowIsReported) {
  EXPECT_THROW(pile.stabilize(chips({INT64_MAX, 1, 0})), CounterOverflow);
}

TEST(Stabilize, PoliciesAgreeOnRandomInstances) {
  rnd::Engine rng(11);
  for (int k = 0; k < 30; ++k) {
    Digraph g = rnd::multidigraph_with_sink(rng, 2 + k % 7, 3 + k % 11);
    Sandpile pile(g);
    ChipConfig s = rnd::config(rng, pile, 12);
    auto ref = pile.stabilize(s);
    EXPECT_TRUE(pile.is_stable(ref.config));
    for (auto p : kPolicies) {
      auto r = pile.stabilize(s, {p, std::nullopt, static_cast<std::uint64_t>(k)});
      EXPECT_EQ(r.config, ref.config);
      EXPECT_EQ(r.odometer, ref.odometer);
    }
  }
}

TEST_F(ZeroGraph, ChipAddition) {
  EXPECT_EQ(pile.chip_add(chips({1, 1, 0}), 0), chips({1, 0, 0}));
  EXPECT_EQ(pile.chip_add(pile.zero(), 1), pile.unit(1));
  EXPECT_THROW(pile.chip_add(pile.zero(), 2), InvalidInput);
}

TEST(ChipAddition, Commutes) {
  rnd::Engine rng(5);
  for (int k = 0; k < 50; ++k) {
    Digraph g = rnd::multidigraph_with_sink(rng, 3 + k % 5, 4 + k % 6);
    Sandpile pile(g);
    ChipConfig s = rnd::config(rng, pile, 5);
    auto verts = pile.non_sink_vertices();
    Vertex a = verts[rnd::uniform(rng, 0, static_cast<long>(verts.size()) - 1)];
    Vertex b = verts[rnd::uniform(rng, 0, static_cast<long>(verts.size()) - 1)];
    EXPECT_EQ(pile.chip_add(pile.chip_add(s, a), b), pile.chip_add(pile.chip_add(s, b), a));
  }
}

TEST_F(ZeroGraph, CanonicalConfigurations) {
  EXPECT_EQ(pile.delta(), chips({2, 2, 0}));
  EXPECT_EQ(pile.beta(), chips({1, 1, 0}));
  EXPECT_EQ(pile.epsilon(), chips({3, 3, 0}));
}

TEST_F(ZeroGraph, Recurrence) {
  for (auto t : {RecurrenceTest::Epsilon, RecurrenceTest::Burning, RecurrenceTest::Peeling}) {
    EXPECT_TRUE(pile.is_recurrent(chips({1, 1, 0}), t));
    EXPECT_TRUE(pile.is_recurrent(chips({0, 1, 0}), t));
    EXPECT_TRUE(pile.is_recurrent(chips({1, 0, 0}), t));
    EXPECT_FALSE(pile.is_recurrent(chips({0, 0, 0}), t));
  }
  EXPECT_THROW(pile.is_recurrent(chips({2, 0, 0})), InvalidInput);
  auto burn = pile.burn(chips({1, 1, 0}));
  EXPECT_EQ(burn.config, chips({1, 1, 0}));
  EXPECT_EQ(burn.odometer.fires, (std::vector<Count>{1, 1, 0}));
  EXPECT_EQ(recurrent_configs(pile), (std::vector<ChipConfig>{chips({1, 0, 0}), chips({0, 1, 0}), chips({1, 1, 0})}));
}

TEST(Recurrence, SingleVertexWithParallelSinkEdges) {
  Digraph g = Digraph::build(2, {{0, 1}, {0, 1}, {0, 1}, {0, 1}}, Vertex{1});
  Sandpile pile(g);
  for (Count c = 0; c < 4; ++c) EXPECT_TRUE(pile.is_recurrent(chips({c, 0})));
  EXPECT_EQ(pile.identity(), chips({0, 0}));
}

TEST(Recurrence, BurningNeedsEulerian) {
  Digraph g = Digraph::build(3, {{0, 1}, {0, 1}, {1, 2}}, Vertex{2});
  Sandpile pile(g);
  EXPECT_THROW(pile.is_recurrent(pile.zero(), RecurrenceTest::Burning), InvalidInput);
  EXPECT_NO_THROW(pile.is_recurrent(pile.zero(), RecurrenceTest::Epsilon));
}

TEST_F(ZeroGraph, GroupOperations) {
  EXPECT_EQ(pile.identity(), chips({1, 1, 0}));
  EXPECT_EQ(pile.inverse(pile.identity()), pile.identity());
  EXPECT_EQ(pile.inverse(chips({0, 1, 0})), chips({1, 0, 0}));
  EXPECT_EQ(pile.group_add(chips({0, 1, 0}), chips({0, 1, 0})), chips({1, 0, 0}));
  EXPECT_EQ(pile.group_order(), 3);
  auto s = pile.group_structure();
  EXPECT_EQ(s.invariant_factors, (std::vector<Integer>{3}));
  EXPECT_THROW(pile.inverse(chips({0, 0, 0})), InvalidInput);
}

TEST(Group, GridWiredInverseAndIdentityLaws) {
  Digraph g = gen::grid_wired(4);
  Sandpile pile(g);
  rnd::Engine rng(3);
  for (int k = 0; k < 10; ++k) {
    ChipConfig r = rnd::recurrent(rng, pile);
    EXPECT_EQ(pile.group_add(r, pile.inverse(r)), pile.identity());
    EXPECT_EQ(pile.group_add(r, pile.identity()), r);
  }
}

TEST(Group, KnownGridIdentity) {
  Digraph g = gen::grid_wired(4);
  Sandpile pile(g);
  EXPECT_EQ(pile.identity(), chips({2, 3, 3, 2, 3, 2, 2, 3, 3, 2, 2, 3, 2, 3, 3, 2, 0}));
}

TEST(Group, OrderMatchesRecurrentCount) {
  for (long k = 2; k <= 5; ++k) {
    Digraph g = gen::complete_with_sink(k);
    Sandpile pile(g);
    // Cayley: k^(k-2) spanning trees of K_k
    Integer expect = 1;
    for (long i = 0; i < k - 2; ++i) expect *= k;
    EXPECT_EQ(pile.group_order(), expect);
    EXPECT_EQ(Integer(static_cast<long>(recurrent_configs(pile).size())), expect);
  }
}

TEST_F(ZeroGraph, Equivalence) {
  EXPECT_TRUE(pile.equivalent_mod_laplacian({{0, 0, 0}}, {{1, 1, 0}}));
  EXPECT_TRUE(pile.equivalent_mod_laplacian({{2, 0, 0}}, {{0, 1, 0}}));
  EXPECT_FALSE(pile.equivalent_mod_laplacian({{0, 0, 0}}, {{1, 0, 0}}));
  EXPECT_EQ(pile.recurrent_representative({{0, 0, 0}}), chips({1, 1, 0}));
  EXPECT_EQ(pile.recurrent_representative({{-4, 2, 0}}), pile.recurrent_representative({{-2, 1, 0}}));
  EXPECT_TRUE(pile.equivalent_mod_laplacian({{-4, 2, 0}}, {{-2, 1, 0}}));
}

TEST_F(ZeroGraph, HarmonicRepresentatives) {
  using V = std::vector<Rational>;
  EXPECT_EQ(pile.harmonic_rep(chips({1, 1, 0})), (V{0, 0, 0}));
  EXPECT_EQ(pile.harmonic_rep(chips({0, 1, 0})), (V{Rational(1, 3), Rational(2, 3), 0}));
  EXPECT_EQ(pile.harmonic_rep(chips({1, 0, 0})), (V{Rational(2, 3), Rational(1, 3), 0}));
}

TEST(Harmonic, AdditiveOnBidirectedGraphs) {
  rnd::Engine rng(8);
  for (int k = 0; k < 10; ++k) {
    Digraph g = rnd::bidirected_with_sink(rng, 3 + k % 4, 2 + k % 5);
    Sandpile pile(g);
    ChipConfig a = rnd::recurrent(rng, pile), b = rnd::recurrent(rng, pile);
    auto fa = pile.harmonic_rep(a), fb = pile.harmonic_rep(b), fab = pile.harmonic_rep(pile.group_add(a, b));
    for (std::size_t v = 0; v < fa.size(); ++v) EXPECT_EQ(fab[v], mod_one(fa[v] + fb[v]));
  }
}

TEST(Harmonic, HarmonicModOneOnDirectedGraphs) {
  // d_v f(v) - sum_w a_vw f(w) is an integer at every non-sink vertex
  Digraph g = gen::directed_torus(3);
  Sandpile pile(g);
  rnd::Engine rng(9);
  for (int k = 0; k < 10; ++k) {
    auto f = pile.harmonic_rep(rnd::recurrent(rng, pile));
    for (Vertex v : pile.non_sink_vertices()) {
      Rational x = Rational(g.out_degree(v)) * f[v];
      for (const auto& a : g.arcs(v)) x -= Rational(static_cast<long>(a.count)) * f[a.head];
      EXPECT_EQ(x.get_den(), 1);
    }
  }
}

TEST_F(ZeroGraph, Superstables) {
  EXPECT_TRUE(pile.is_superstable(chips({0, 0, 0})));
  EXPECT_TRUE(pile.is_superstable(chips({0, 1, 0})));
  EXPECT_TRUE(pile.is_superstable(chips({1, 0, 0})));
  EXPECT_FALSE(pile.is_superstable(chips({1, 1, 0})));
  EXPECT_EQ(pile.superstabilize(chips({2, 2, 0})), chips({0, 0, 0}));
  EXPECT_EQ(pile.cluster_fire(chips({1, 1, 0}), {0, 1}), chips({0, 0, 0}));
  EXPECT_FALSE(pile.try_cluster_fire(chips({1, 0, 0}), {0}));
  EXPECT_THROW(pile.cluster_fire(chips({0, 1, 0}), {0}), InvalidInput);
}

TEST(Superstable, NonEulerianUsesSubsetSearch) {
  Digraph g = Digraph::build(3, {{0, 1}, {0, 1}, {0, 2}, {1, 2}}, Vertex{2});
  Sandpile pile(g);
  EXPECT_TRUE(pile.is_superstable(chips({1, 0, 0})));
  EXPECT_FALSE(pile.is_superstable(chips({0, 1, 0})));
  EXPECT_THROW(pile.superstabilize(chips({0, 0, 0})), InvalidInput);
}

TEST(MoveBound, PathAndCentre) {
  Digraph path = gen::path_bidirected(2);
  Sandpile p(path);
  auto mb = p.move_bound_check(chips({9, 0}), max_effective_resistance(path));
  EXPECT_EQ(mb.moves, 9);
  EXPECT_EQ(mb.bound, Rational(18));
  EXPECT_TRUE(mb.ok);
  EXPECT_EQ(p.move_bound_check(p.zero(), 1).moves, 0);

  Digraph grid = gen::grid_wired(8);
  Sandpile q(grid);
  ChipConfig s = q.zero();
  s[3 * 8 + 3] = 500;
  EXPECT_TRUE(q.move_bound_check(s, max_effective_resistance(grid)).ok);
}
