#include <gtest/gtest.h>

#include "sandlab/random.hpp"
#include "sandlab/sandlab.hpp"
#include "sandlab/verify.hpp"

using namespace sandlab;

namespace {

StackConfig stacks_of(const Digraph& g, std::vector<VertexStack> st) {
  StackConfig s{std::move(st)};
  s.stacks.resize(g.vertex_count());
  return s;
}

}  // namespace

TEST(LoopErase, Cases) {
  EXPECT_EQ(loop_erase({0, 1, 2, 3}), (std::vector<Vertex>{0, 1, 2, 3}));
  EXPECT_EQ(loop_erase({0, 1, 0, 9}), (std::vector<Vertex>{0, 9}));
  EXPECT_EQ(loop_erase({0, 1, 2, 1, 9}), (std::vector<Vertex>{0, 1, 9}));
  EXPECT_EQ(loop_erase({0, 1, 2, 0, 3, 3, 9}), (std::vector<Vertex>{0, 3, 9}));
  EXPECT_TRUE(loop_erase({}).empty());
}

TEST(Stacks, RotorRoundTrip) {
  Digraph g = gen::grid_wired(3);
  StackEngine eng(g);
  rnd::Engine rng(1);
  for (int k = 0; k < 10; ++k) {
    RotorConfig r = rnd::rotors(rng, g);
    StackConfig s = eng.from_rotors(r);
    EXPECT_NO_THROW(eng.validate(s));
    EXPECT_EQ(eng.top(s), r);
  }
}

TEST(Stacks, PopPeriods) {
  Digraph path = gen::path_bidirected(2);
  StackEngine p(path);
  StackConfig s = p.from_rotors(RotorRouter(path).uniform(0));
  EXPECT_EQ(p.top(p.pop(s, 0)), p.top(s));

  Digraph k = gen::complete_with_sink(3);
  StackEngine eng(k);
  StackConfig t = stacks_of(k, {{{0, 1}, 0}, {{0, 1}, 0}});
  EXPECT_EQ(eng.element(eng.pop(t, 0), 0, 0), 1);
  EXPECT_EQ(eng.reverse_pop(eng.pop(t, 0), 0), t);
  EXPECT_THROW(eng.pop(t, 2), InvalidInput);
}

TEST(Stacks, ValidateRejectsNonInfinitive) {
  Digraph g = gen::complete_with_sink(3);
  StackEngine eng(g);
  EXPECT_THROW(eng.validate(stacks_of(g, {{{0, 0}, 0}, {{0, 1}, 0}})), InvalidInput);
  EXPECT_THROW(eng.validate(stacks_of(g, {{{0, 2}, 0}, {{0, 1}, 0}})), InvalidInput);
  EXPECT_NO_THROW(eng.validate(stacks_of(g, {{{1, 0, 0, 1}, -7}, {{0, 1}, 3}})));
}

TEST(CyclePop, OnlyTopCycles) {
  Digraph g = gen::complete_with_sink(3);
  StackEngine eng(g);
  // slot 0 points at the other vertex, slot 1 at the sink
  StackConfig s = stacks_of(g, {{{0, 1}, 0}, {{0, 1}, 0}});
  ASSERT_TRUE(eng.is_top_cycle(s, {0, 1}));
  StackConfig popped = eng.cycle_pop(s, {0, 1});
  EXPECT_EQ(popped.stacks[0].offset, -1);
  EXPECT_EQ(popped.stacks[1].offset, -1);
  EXPECT_EQ(eng.top_target(popped, 0), 2);
  EXPECT_EQ(eng.top_target(popped, 1), 2);
  EXPECT_EQ(eng.cycle_pop(popped, {0, 1}), popped);
  EXPECT_EQ(eng.cycle_pop(s, {0}), s);
}

TEST(PopToAcyclic, ZeroGraphAndAcyclicInput) {
  Digraph g = gen::complete_with_sink(3);
  StackEngine eng(g);
  auto res = eng.pop_to_acyclic(stacks_of(g, {{{0, 1}, 0}, {{0, 1}, 0}}));
  ASSERT_EQ(res.popped.size(), 1u);
  EXPECT_EQ(res.popped[0], (std::vector<Vertex>{0, 1}));
  EXPECT_EQ(eng.top_target(res.stacks, 0), 2);
  EXPECT_EQ(eng.top_target(res.stacks, 1), 2);

  auto again = eng.pop_to_acyclic(res.stacks);
  EXPECT_TRUE(again.popped.empty());
  EXPECT_EQ(again.stacks, res.stacks);
}

TEST(PopToAcyclic, SelectionOrderDoesNotMatter) {
  rnd::Engine rng(9);
  for (int k = 0; k < 30; ++k) {
    Digraph g = rnd::multidigraph_with_sink(rng, 3 + k % 6, 4 + k % 7);
    StackEngine eng(g);
    StackConfig s = verify::random_stacks(rng, g);
    auto a = eng.pop_to_acyclic(s);
    auto b = eng.pop_to_acyclic_random(s, static_cast<std::uint64_t>(k));
    EXPECT_EQ(a.stacks, b.stacks);
    EXPECT_EQ(a.popped.size(), b.popped.size());
    EXPECT_TRUE(eng.find_cycle(a.stacks).empty());
  }
}

TEST(StackWalk, MatchesRotorRouter) {
  rnd::Engine rng(10);
  for (int k = 0; k < 30; ++k) {
    Digraph g = rnd::multidigraph_with_sink(rng, 3 + k % 6, 3 + k % 5);
    StackEngine eng(g);
    RotorRouter router(g);
    RotorConfig r = rnd::rotors(rng, g);
    Vertex v = static_cast<Vertex>(rnd::uniform(rng, 0, static_cast<long>(g.vertex_count()) - 2));
    auto ws = eng.chip_add(eng.from_rotors(r), v);
    auto wr = router.chip_add(r, v);
    EXPECT_EQ(eng.top(ws.stacks), wr.rotors);
    EXPECT_EQ(ws.path, wr.path);
  }
}

TEST(StackWalk, InverseRoundTripAndLoopErasure) {
  rnd::Engine rng(13);
  for (int k = 0; k < 30; ++k) {
    Digraph g = rnd::multidigraph_with_sink(rng, 3 + k % 6, 4 + k % 5);
    StackEngine eng(g);
    StackConfig s = eng.pop_to_acyclic(verify::random_stacks(rng, g)).stacks;
    Vertex v = static_cast<Vertex>(rnd::uniform(rng, 0, static_cast<long>(g.vertex_count()) - 2));
    StackConfig pre = eng.chip_add_inverse(s, v);
    EXPECT_TRUE(eng.find_cycle(pre).empty());
    auto walk = eng.chip_add(pre, v);
    EXPECT_EQ(walk.stacks, s);
    EXPECT_EQ(loop_erase(walk.path), eng.top_path(s, v));
  }
}

TEST(StackWalk, PathInverseIsReversePop) {
  Digraph g = gen::path_bidirected(2);
  StackEngine eng(g);
  StackConfig s = stacks_of(g, {{{0}, 0}});
  EXPECT_EQ(eng.chip_add_inverse(s, 0), eng.reverse_pop(s, 0));
  EXPECT_EQ(eng.chip_add(eng.chip_add_inverse(s, 0), 0).stacks, s);
}

TEST(StackWalk, InverseNeedsAcyclicTop) {
  Digraph g = gen::complete_with_sink(3);
  StackEngine eng(g);
  EXPECT_THROW(eng.chip_add_inverse(stacks_of(g, {{{0, 1}, 0}, {{0, 1}, 0}}), 0), InvalidInput);
}

TEST(StackWalk, CommutesWithCyclePopping) {
  verify::Outcome o = verify::stack_engine();
  EXPECT_TRUE(o.ok) << o.detail;
}
