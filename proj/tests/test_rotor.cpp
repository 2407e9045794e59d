#include <gtest/gtest.h>

#include <set>

#include "sandlab/random.hpp"
#include "sandlab/sandlab.hpp"
#include "sandlab/verify.hpp"

using namespace sandlab;

namespace {

int slot_to(const Digraph& g, Vertex v, Vertex w) {
  auto heads = g.out_heads(v);
  for (int s = 0; s < static_cast<int>(heads.size()); ++s)
    if (heads[s] == w) return s;
  ADD_FAILURE() << "no edge " << v << "->" << w;
  return -1;
}

RotorConfig pointing(const Digraph& g, const std::vector<Vertex>& targets) {
  RotorConfig r{std::vector<int>(g.vertex_count(), -1)};
  for (Vertex v = 0; v < static_cast<Vertex>(targets.size()); ++v)
    if (targets[v] >= 0) r.slots[v] = slot_to(g, v, targets[v]);
  return r;
}

// 0 <-> 1 and 2 <-> 3, joined by 0 -> 2 and 2 -> 0.
Digraph two_pairs() { return Digraph::build(4, {{0, 1}, {0, 2}, {1, 0}, {2, 3}, {2, 0}, {3, 2}}); }

}  // namespace

TEST(RotorStep, DirectedCycle) {
  Digraph g = gen::directed_cycle(3);
  RotorRouter router(g);
  SingleChipState s{0, router.uniform(0)};
  auto t = router.step(s);
  EXPECT_EQ(t.chip, 1);
  EXPECT_EQ(t.rotors, s.rotors);
}

TEST(RotorStep, AdvanceThenMove) {
  Digraph g = gen::complete(3);
  RotorRouter router(g);
  SingleChipState s{0, router.uniform(0)};
  auto t = router.step(s);
  // rotor at 0 advances from slot 0 (-> 1) to slot 1 (-> 2), then the chip moves
  EXPECT_EQ(t.rotors.slots[0], 1);
  EXPECT_EQ(t.chip, 2);
}

TEST(Unicycle, Recognition) {
  Digraph c3 = gen::directed_cycle(3);
  RotorRouter r3(c3);
  for (Vertex v = 0; v < 3; ++v) {
    auto cert = r3.unicycle({v, r3.uniform(0)});
    ASSERT_TRUE(cert);
    EXPECT_EQ(cert.cycle.size(), 3u);
    EXPECT_EQ(cert.cycle.front(), v);
  }
  Digraph g = two_pairs();
  RotorRouter router(g);
  EXPECT_FALSE(router.unicycle({0, pointing(g, {1, 0, 3, 2})}));
  RotorConfig one_cycle = pointing(g, {1, 0, 0, 2});
  EXPECT_TRUE(router.unicycle({0, one_cycle}));
  EXPECT_FALSE(router.unicycle({3, one_cycle}));
}

TEST(Unicycle, InverseRoundTrips) {
  rnd::Engine rng(4);
  for (int k = 0; k < 20; ++k) {
    Digraph g = rnd::eulerian(rng, 3 + k % 5, 2 + k % 4, 4);
    RotorRouter router(g);
    auto orbit = router.orbit(verify::unicycle_at(g, 0));
    for (const auto& s : orbit.states) {
      ASSERT_TRUE(router.unicycle(s));
      EXPECT_EQ(router.step_inverse(router.step(s)), s);
      EXPECT_EQ(router.step(router.step_inverse(s)), s);
    }
  }
}

TEST(Unicycle, InverseMovesBackwardOnACycle) {
  Digraph g = gen::directed_cycle(3);
  RotorRouter router(g);
  EXPECT_EQ(router.step_inverse({1, router.uniform(0)}).chip, 0);
  EXPECT_THROW(router.step_inverse({0, pointing(two_pairs(), {1, 0, 3, 2})}), InvalidInput);
}

TEST(Orbit, Lengths) {
  Digraph c3 = gen::directed_cycle(3);
  EXPECT_EQ(RotorRouter(c3).orbit({0, RotorRouter(c3).uniform(0)}).states.size(), 3u);
  Digraph k2 = gen::complete(2);
  EXPECT_EQ(RotorRouter(k2).orbit({0, RotorRouter(k2).uniform(0)}).states.size(), 2u);
  Digraph grid = gen::grid_bidirected(3, 4);
  EXPECT_EQ(RotorRouter(grid).orbit(verify::unicycle_at(grid, 0)).states.size(), 34u);
}

TEST(Orbit, EulerianRotorsTurnOnce) {
  Digraph g = gen::grid_bidirected(3, 4);
  RotorRouter router(g);
  auto orbit = router.orbit(verify::unicycle_at(g, 5));
  std::vector<int> visits(g.vertex_count(), 0);
  for (const auto& s : orbit.states) ++visits[s.chip];
  for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) EXPECT_EQ(visits[v], g.out_degree(v));
  std::set<EdgeId> edges(orbit.edges.begin(), orbit.edges.end());
  EXPECT_EQ(edges.size(), g.edge_count());
}

TEST(Orbit, NonUnicycleStartNeverReturns) {
  Digraph g = two_pairs();
  RotorRouter router(g);
  EXPECT_THROW(router.orbit({3, pointing(g, {1, 0, 0, 2})}), InvalidInput);
}

TEST(ChipAddition, PathToSinkIsIdentity) {
  Digraph g = gen::path_bidirected(2);
  RotorRouter router(g);
  auto w = router.chip_add(router.uniform(0), 0);
  EXPECT_EQ(w.rotors, router.uniform(0));
  EXPECT_EQ(w.path, (std::vector<Vertex>{0, 1}));
}

TEST(ChipAddition, ZeroGraphKeepsAcyclic) {
  // out-order (other vertex, sink) at both vertices; start with both rotors at the sink
  Digraph g = gen::complete_with_sink(3);
  RotorRouter router(g);
  RotorConfig r = pointing(g, {2, 2, -1});
  ASSERT_TRUE(router.is_acyclic(r));
  for (Vertex v : {0, 1, 0, 0, 1}) {
    r = router.chip_add(r, v).rotors;
    EXPECT_TRUE(router.is_acyclic(r));
  }
  EXPECT_FALSE(router.is_acyclic(pointing(g, {1, 0, -1})));
}

TEST(ChipAddition, Commutes) {
  rnd::Engine rng(6);
  for (int k = 0; k < 50; ++k) {
    Digraph g = rnd::multidigraph_with_sink(rng, 3 + k % 6, 3 + k % 5);
    RotorRouter router(g);
    RotorConfig r = rnd::rotors(rng, g);
    Vertex a = static_cast<Vertex>(rnd::uniform(rng, 0, static_cast<long>(g.vertex_count()) - 2));
    Vertex b = static_cast<Vertex>(rnd::uniform(rng, 0, static_cast<long>(g.vertex_count()) - 2));
    EXPECT_EQ(router.chip_add(router.chip_add(r, a).rotors, b).rotors,
              router.chip_add(router.chip_add(r, b).rotors, a).rotors);
  }
}

TEST(Action, ZeroIdentityAndComposition) {
  Digraph g = gen::grid_wired(3);
  RotorRouter router(g);
  const Sandpile& pile = router.sandpile();
  rnd::Engine rng(2);
  for (int k = 0; k < 10; ++k) {
    RotorConfig tree = rnd::tree(rng, g);
    EXPECT_EQ(router.act(pile.zero(), tree), tree);
    EXPECT_EQ(router.act(pile.identity(), tree), tree);
    ChipConfig a = rnd::recurrent(rng, pile), b = rnd::recurrent(rng, pile);
    EXPECT_EQ(router.act(pile.plus(a, b), tree), router.act(b, router.act(a, tree)));
  }
}

TEST(Action, SolveInvertsAction) {
  Digraph g = gen::complete_with_sink(3);
  RotorRouter router(g);
  const Sandpile& pile = router.sandpile();
  std::vector<RotorConfig> trees{pointing(g, {2, 2, -1}), pointing(g, {1, 2, -1}), pointing(g, {2, 0, -1})};
  for (const auto& from : trees) {
    EXPECT_EQ(router.tree_action_solve(from, from), pile.identity());
    for (const auto& to : trees) {
      ChipConfig s = router.tree_action_solve(from, to);
      EXPECT_TRUE(pile.is_recurrent(s));
      EXPECT_EQ(router.act(s, from), to);
    }
  }
}

TEST(Action, GridRoundTrip) {
  Digraph g = gen::grid_wired(3);
  RotorRouter router(g);
  rnd::Engine rng(12);
  for (int k = 0; k < 20; ++k) {
    RotorConfig from = rnd::tree(rng, g), to = rnd::tree(rng, g);
    EXPECT_EQ(router.act(router.tree_action_solve(from, to), from), to);
  }
}

TEST(TreeBijection, RoundTripAndImageSize) {
  Digraph g = gen::complete_with_sink(4);
  RotorRouter router(g);
  TreeBijection tb(router, pointing(g, {3, 3, 3, -1}));
  std::set<RotorConfig> image;
  for (const auto& c : recurrent_configs(router.sandpile())) {
    RotorConfig t = tb.tree_of(c);
    EXPECT_TRUE(router.is_acyclic(t));
    EXPECT_EQ(tb.config_of(t), c);
    image.insert(t);
  }
  EXPECT_EQ(Integer(static_cast<long>(image.size())), router.sandpile().group_order());
  EXPECT_EQ(tb.tree_of(router.sandpile().identity()), tb.base());
  EXPECT_THROW(TreeBijection(router, pointing(g, {1, 0, 3, -1})), InvalidInput);
}

TEST(Tour, CycleAndGrid) {
  Digraph c3 = gen::directed_cycle(3);
  RotorRouter r3(c3);
  EXPECT_EQ(r3.eulerian_tour({0, r3.uniform(0)}, 0), (std::vector<EdgeId>{0, 1, 2}));

  Digraph grid = gen::grid_bidirected(3, 4);
  RotorRouter router(grid);
  EdgeId e = grid.out_edge(0, 0);
  auto tour = router.eulerian_tour(verify::unicycle_at(grid, 0, grid.out_degree(0) - 1), e);
  ASSERT_EQ(tour.size(), 34u);
  EXPECT_EQ(tour.front(), e);
  EXPECT_EQ(std::set<EdgeId>(tour.begin(), tour.end()).size(), 34u);
  for (std::size_t i = 0; i + 1 < tour.size(); ++i) EXPECT_EQ(grid.head(tour[i]), grid.tail(tour[i + 1]));
}

TEST(HittingBound, YEqualsZ) {
  Digraph g = gen::grid_wired(3);
  RotorRouter router(g);
  ChipConfig s = router.sandpile().zero();
  s[4] = 7;
  s[0] = 2;
  auto hb = router.hitting_bound_check({9}, {9}, s, router.uniform(0));
  EXPECT_EQ(hb.walk_count, 9);
  EXPECT_EQ(hb.expected_count, 9);
  EXPECT_EQ(hb.lhs, 0);
  EXPECT_TRUE(hb.ok);
}

TEST(HittingBound, PathMiddle) {
  Digraph g = gen::path_bidirected(3);
  RotorRouter router(g);
  ChipConfig s = router.sandpile().zero();
  s[1] = 1;
  auto hb = router.hitting_bound_check({0}, {0, 2}, s, router.uniform(0));
  EXPECT_EQ(hb.h[1], Rational(1, 2));
  EXPECT_EQ(hb.expected_count, Rational(1, 2));
  EXPECT_LE(abs(hb.lhs), 2);
  EXPECT_TRUE(hb.ok);
  EXPECT_THROW(router.hitting_bound_check({1}, {0, 2}, s, router.uniform(0)), InvalidInput);
  EXPECT_THROW(router.hitting_bound_check({0}, {0}, s, router.uniform(0)), InvalidInput);
}

TEST(CycleReversal, UnitSquare) {
  Digraph g = gen::grid_bidirected(2, 2);
  RotorRouter router(g);
  ASSERT_TRUE(router.out_order_clockwise());
  // (0,0) -> (0,1) -> (1,1) -> (1,0) -> (0,0) is clockwise with y up
  SingleChipState u{0, pointing(g, {2, 0, 3, 1})};
  auto rep = router.cycle_reversal_check(u);
  EXPECT_TRUE(rep.ok());
  EXPECT_TRUE(rep.interior.empty());
  EXPECT_THROW(router.cycle_reversal_check({0, pointing(g, {1, 3, 0, 2})}), InvalidInput);
}

TEST(CycleReversal, EnclosedVertexTurnsFully) {
  Digraph g = gen::grid_bidirected(3, 3);
  RotorRouter router(g);
  // clockwise around the boundary of the 3x3 grid, centre vertex 4 inside
  std::vector<Vertex> ring{0, 3, 6, 7, 8, 5, 2, 1};
  std::vector<Vertex> targets(9, -1);
  for (std::size_t i = 0; i < ring.size(); ++i) targets[ring[i]] = ring[(i + 1) % ring.size()];
  targets[4] = 1;
  auto rep = router.cycle_reversal_check({0, pointing(g, targets)});
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.interior, (std::vector<Vertex>{4}));
}

TEST(CycleReversal, TwoCycle) {
  Digraph g = gen::grid_bidirected(1, 2);
  RotorRouter router(g);
  auto rep = router.cycle_reversal_check({0, router.uniform(0)});
  EXPECT_TRUE(rep.reached);
  EXPECT_LE(rep.steps, 2u);
}

TEST(Noncommutativity, FixedStepRoutingDependsOnOrder) {
  auto rep = noncommutativity_demo();
  EXPECT_TRUE(rep.differ());
  RotorRouter router(rep.graph);
  auto a = route_in_order(router, rep.start, rep.chips, -1);
  auto b = route_in_order(router, rep.start, {rep.chips.rbegin(), rep.chips.rend()}, -1);
  EXPECT_EQ(a, b);
  EXPECT_FALSE(noncommutativity_demo(0).differ());
}
