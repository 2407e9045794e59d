#pragma once

// Property checks comparing the engines against the brute-force oracles.
// The acceptance binary and `sandlab verify` both run these.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sandlab/sandlab.hpp"
#include "sandlab/oracles.hpp"
#include "sandlab/random.hpp"

namespace sandlab::verify {

struct Outcome {
  bool ok = true;
  std::string detail;

  // Records a failure message; the first few are kept.
  void fail(const std::string& what) {
    if (ok || std::count(detail.begin(), detail.end(), ';') < 4) detail += (detail.empty() ? "" : "; ") + what;
    ok = false;
  }
  void expect(bool cond, const std::string& what) {
    if (!cond) fail(what);
  }
  void note(const std::string& what) {
    if (ok) detail += (detail.empty() ? "" : "; ") + what;
  }
};

struct Check {
  std::string name;
  double time_limit_s;
  std::function<Outcome()> run;
};

struct Report {
  std::string name;
  bool ok;
  double seconds;
  double limit;
  std::string detail;
};

inline Report run_check(const Check& c) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (s > c.time_limit_s) o.fail("took " + std::to_string(s) + " s, limit " + std::to_string(c.time_limit_s) + " s");
  return {c.name, o.ok, s, c.time_limit_s, o.detail};
}

inline std::string describe(const ChipConfig& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c.chips[i]);
  return s + ")";
}

// Small-graph families.

/// Every labeled simple digraph on n vertices (sink n-1) whose non-sink
/// vertices have out-degree 1..max_deg and which is Eulerian with sink.
inline std::vector<Digraph> eulerian_with_sink_family(int n, int max_deg) {
  std::vector<Digraph> out;
  const int m = n - 1;
  // choices per vertex: subsets of the other n-1 vertices
  std::vector<std::vector<std::uint32_t>> choice(m);
  for (int v = 0; v < m; ++v)
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask)
      if (!(mask >> v & 1) && std::popcount(mask) <= max_deg) choice[v].push_back(mask);
  std::vector<std::size_t> pick(m, 0);
  while (m > 0) {
    std::vector<Edge> edges;
    for (int v = 0; v < m; ++v)
      for (int w = 0; w < n; ++w)
        if (choice[v][pick[v]] >> w & 1) edges.push_back({v, w});
    Digraph g = Digraph::build(n, edges, static_cast<Vertex>(n - 1));
    if (classify(g).eulerian_with_sink) out.push_back(std::move(g));
    int i = 0;
    for (; i < m; ++i) {
      if (++pick[i] < choice[i].size()) break;
      pick[i] = 0;
    }
    if (i == m) break;
  }
  return out;
}

inline std::vector<Digraph> small_eulerian_with_sink() {
  std::vector<Digraph> all;
  for (int n = 2; n <= 5; ++n)
    for (auto& g : eulerian_with_sink_family(n, 3)) all.push_back(std::move(g));
  return all;
}

/// Every strongly connected multidigraph with at most max_edges edges, one
/// cyclic order per vertex (heads ascending), up to no symmetry.
inline std::vector<Digraph> small_strongly_connected(int max_edges) {
  std::vector<Digraph> out;
  for (int n = 1; n <= max_edges; ++n) {
    // per-vertex head multisets, as nondecreasing sequences
    std::vector<std::vector<std::vector<Vertex>>> options(1);
    std::function<void(std::vector<Vertex>&, int, int)> gen = [&](std::vector<Vertex>& cur, int from, int left) {
      if (!cur.empty()) options[0].push_back(cur);
      if (left == 0) return;
      for (int w = from; w < n; ++w) {
        cur.push_back(w);
        gen(cur, w, left - 1);
        cur.pop_back();
      }
    };
    std::vector<Vertex> cur;
    gen(cur, 0, max_edges - (n - 1));
    const auto& opts = options[0];
    std::vector<std::size_t> pick(n, 0);
    std::function<void(int, int)> rec = [&](int v, int used) {
      if (v == n) {
        std::vector<Edge> edges;
        for (int u = 0; u < n; ++u)
          for (Vertex w : opts[pick[u]]) edges.push_back({u, w});
        Digraph g = Digraph::build(n, edges, std::nullopt);
        if (classify(g).strongly_connected) out.push_back(std::move(g));
        return;
      }
      for (std::size_t k = 0; k < opts.size(); ++k) {
        int d = static_cast<int>(opts[k].size());
        if (used + d + (n - v - 1) > max_edges) continue;
        pick[v] = k;
        rec(v + 1, used + d);
      }
    };
    rec(0, 0);
  }
  return out;
}

// Conversions between rotor configurations and oracle objects.

inline RotorConfig tree_to_rotors(const Digraph& g, const oracle::EdgeSet& t) {
  RotorConfig r;
  r.slots.assign(g.vertex_count(), -1);
  for (EdgeId e : t) r.slots[g.tail(e)] = g.slot_of(e);
  return r;
}

inline oracle::Config dual_of(const Digraph& g, const oracle::Config& c) {
  oracle::Config d(c.size(), 0);
  for (Vertex v = 0; v < static_cast<Vertex>(c.size()); ++v)
    if (!(g.sink() && *g.sink() == v)) d[v] = g.out_degree(v) - 1 - c[v];
  return d;
}

inline Integer factorial(long k) {
  Integer f = 1;
  for (long i = 2; i <= k; ++i) f *= i;
  return f;
}

// A unicycle on a sink-free strongly connected graph: rotors along a
// breadth-first in-tree toward w, then rho(w) pointing along any out-edge.
inline SingleChipState unicycle_at(const Digraph& g, Vertex w, int slot_at_w = 0) {
  const auto n = static_cast<Vertex>(g.vertex_count());
  std::vector<std::vector<std::pair<Vertex, int>>> rev(n);
  for (Vertex v = 0; v < n; ++v)
    for (int s = 0; s < g.out_degree(v); ++s) rev[g.out_heads(v)[s]].push_back({v, s});
  SingleChipState st{w, RotorConfig{std::vector<int>(n, -1)}};
  std::vector<char> seen(n, 0);
  std::vector<Vertex> queue{w};
  seen[w] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (auto [u, s] : rev[queue[i]])
      if (!seen[u]) {
        seen[u] = 1;
        st.rotors.slots[u] = s;
        queue.push_back(u);
      }
  detail::require(queue.size() == g.vertex_count(), "graph is not strongly connected");
  st.rotors.slots[w] = slot_at_w % g.out_degree(w);
  return st;
}

// The checks. Each returns an Outcome; run_check adds timing.

inline Outcome zero_graph_values() {
  Outcome o;
  Digraph g = gen::complete_with_sink(3);
  Sandpile pile(g);
  o.expect(pile.group_order() == 3, "group order != 3");
  auto gs = pile.group_structure();
  o.expect(gs.order == 3 && gs.invariant_factors == std::vector<Integer>{3}, "structure is not Z/3");
  o.expect(pile.identity() == ChipConfig(std::vector<Count>{1, 1, 0}), "identity is " + describe(pile.identity()));
  std::set<ChipConfig> rec;
  for (auto& c : recurrent_configs(pile)) rec.insert(c);
  std::set<ChipConfig> want{ChipConfig(std::vector<Count>{1, 1, 0}), ChipConfig(std::vector<Count>{0, 1, 0}),
                            ChipConfig(std::vector<Count>{1, 0, 0})};
  o.expect(rec == want, "recurrent set mismatch");
  std::set<std::pair<Rational, Rational>> harm, want_h{{Rational(0), Rational(0)},
                                                       {make_rational(1, 3), make_rational(2, 3)},
                                                       {make_rational(2, 3), make_rational(1, 3)}};
  for (auto& c : rec) {
    auto f = pile.harmonic_rep(c);
    harm.insert({f[0], f[1]});
  }
  o.expect(harm == want_h, "harmonic representatives mismatch");
  return o;
}

inline std::vector<std::pair<std::string, Digraph>> family_graphs_up_to_12() {
  std::vector<std::pair<std::string, Digraph>> out;
  for (long l = 1; l <= 3; ++l) out.push_back({"grid-wired " + std::to_string(l), gen::grid_wired(l)});
  for (long l = 1; l <= 3; ++l) out.push_back({"torus " + std::to_string(l), gen::directed_torus(l)});
  for (long d = 1; d <= 4; ++d) {
    Digraph g = gen::disk_wired(d);
    if (g.vertex_count() <= 12) out.push_back({"disk-wired " + std::to_string(d), std::move(g)});
  }
  for (long k = 1; k <= 12; ++k) {
    out.push_back({"complete " + std::to_string(k), gen::complete(k)});
    out.push_back({"complete-with-sink " + std::to_string(k), gen::complete_with_sink(k)});
    out.push_back({"cycle " + std::to_string(k), gen::directed_cycle(k)});
    out.push_back({"path " + std::to_string(k), gen::path_bidirected(k)});
  }
  for (long r = 1; r <= 3; ++r)
    for (long c = 1; r * c <= 12; ++c)
      out.push_back({"grid " + std::to_string(r) + "x" + std::to_string(c), gen::grid_bidirected(r, c)});
  return out;
}

inline Outcome matrix_tree(std::uint64_t seed = 11) {
  Outcome o;
  std::size_t graphs = 0;
  for (auto& [name, g] : family_graphs_up_to_12()) {
    // every root for small graphs, the sink (or vertex 0) otherwise
    std::vector<Vertex> roots;
    if (g.vertex_count() <= 6)
      for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) roots.push_back(v);
    else
      roots.push_back(g.sink().value_or(0));
    for (Vertex r : roots) {
      Digraph h = with_sink(g, r);
      Integer det = determinant(reduced_laplacian(h, r));
      Integer count = oracle::count_spanning_trees(h, r);
      o.expect(det == count, name + " root " + std::to_string(r) + ": det " + det.get_str() + " vs " + count.get_str());
      if (g.vertex_count() <= 8) {
        auto listed = oracle::enumerate_spanning_trees(h, r).count();
        o.expect(Integer(static_cast<unsigned long>(listed)) == count, name + ": listed trees disagree with count");
      }
      ++graphs;
    }
  }
  rnd::Engine rng(seed);
  for (int k = 0; k < 200; ++k) {
    long n = rnd::uniform(rng, 2, 9);
    Digraph g = rnd::multidigraph_with_sink(rng, n, rnd::uniform(rng, 0, 3 * n));
    Vertex s = *g.sink();
    Integer det = determinant(reduced_laplacian(g, s));
    auto listed = oracle::enumerate_spanning_trees(g, s).count();
    o.expect(det == Integer(static_cast<unsigned long>(listed)), "random graph " + std::to_string(k) + ": det " +
                                                                    det.get_str() + " vs " + std::to_string(listed));
    ++graphs;
  }
  o.note(std::to_string(graphs) + " graph/root pairs");
  return o;
}

inline Outcome abelian_property(std::uint64_t seed = 3) {
  Outcome o;
  rnd::Engine rng(seed);
  for (int k = 0; k < 100; ++k) {
    long n = rnd::uniform(rng, 2, 12);
    Digraph g = rnd::multidigraph_with_sink(rng, n, rnd::uniform(rng, 0, 3 * n));
    Sandpile pile(g);
    ChipConfig s = rnd::config(rng, pile, 4 * (1 + static_cast<Count>(g.edge_count()) / n));
    auto ref = pile.stabilize(s);
    for (auto p : {FiringPolicy::Fifo, FiringPolicy::Lifo, FiringPolicy::Random}) {
      StabilizeOptions opt{p, std::nullopt, seed + static_cast<std::uint64_t>(k)};
      auto other = pile.stabilize(s, opt);
      o.expect(other.config == ref.config && other.odometer == ref.odometer,
               "instance " + std::to_string(k) + ": policy " + std::to_string(static_cast<int>(p)) + " differs");
    }
  }
  return o;
}

inline Outcome recurrence_tests_agree() {
  Outcome o;
  std::size_t graphs = 0, configs = 0;
  for (const Digraph& g : small_eulerian_with_sink()) {
    Sandpile pile(g);
    auto oracle_set = oracle::recurrent_set_oracle(g);
    Integer order = pile.group_order();
    o.expect(Integer(static_cast<unsigned long>(oracle_set.size())) == order, "oracle set size differs from det");
    for_each_stable(pile, [&](const ChipConfig& c) {
      bool e = pile.is_recurrent(c, RecurrenceTest::Epsilon);
      bool b = pile.is_recurrent(c, RecurrenceTest::Burning);
      bool p = pile.is_recurrent(c, RecurrenceTest::Peeling);
      bool t = oracle_set.count(c.chips) > 0;
      if (!(e == b && b == p && p == t))
        o.fail(io::serialize_graph(g) + " config " + describe(c) + ": eps/burn/peel/oracle = " + std::to_string(e) +
               std::to_string(b) + std::to_string(p) + std::to_string(t));
      ++configs;
    });
    ++graphs;
  }
  o.note(std::to_string(graphs) + " graphs, " + std::to_string(configs) + " configurations");
  return o;
}

inline Outcome unicycle_theory() {
  Outcome o;
  std::size_t graphs = 0, eulerian = 0;
  for (const Digraph& g : small_strongly_connected(6)) {
    RotorRouter router(g);
    auto closed = oracle::closed_orbit_states(g);
    // every state: unicycle iff on a closed orbit
    std::uint64_t total = g.vertex_count();
    for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) total *= static_cast<std::uint64_t>(g.out_degree(v));
    std::size_t unicycles = 0;
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t c = code;
      SingleChipState s{static_cast<Vertex>(c % g.vertex_count()), RotorConfig{std::vector<int>(g.vertex_count())}};
      c /= g.vertex_count();
      for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
        s.rotors.slots[v] = static_cast<int>(c % static_cast<std::uint64_t>(g.out_degree(v)));
        c /= static_cast<std::uint64_t>(g.out_degree(v));
      }
      bool uni = static_cast<bool>(router.unicycle(s));
      bool on_orbit = closed.count(oracle::RotorState{s.chip, s.rotors.slots}) > 0;
      if (uni != on_orbit) o.fail("unicycle/closed-orbit mismatch on " + io::serialize_graph(g));
      if (uni) {
        ++unicycles;
        if (router.step_inverse(router.step(s)) != s) o.fail("step_inverse does not undo step");
      }
    }
    o.expect(unicycles == closed.size(), "closed orbit count differs");
    if (classify(g).eulerian) {
      ++eulerian;
      for (const auto& st : closed) {
        SingleChipState s{st.chip, RotorConfig{st.slots}};
        auto orbit = router.orbit(s);
        if (orbit.states.size() != g.edge_count()) {
          o.fail("Eulerian orbit length " + std::to_string(orbit.states.size()) + " != |E|");
          continue;
        }
        std::vector<int> leaves(g.vertex_count(), 0);
        for (const auto& x : orbit.states) ++leaves[x.chip];
        for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v)
          o.expect(leaves[v] == g.out_degree(v), "rotor did not advance exactly outdeg times");
        std::vector<char> used(g.edge_count(), 0);
        for (EdgeId e : orbit.edges) used[e] = 1;
        o.expect(std::all_of(used.begin(), used.end(), [](char u) { return u != 0; }), "orbit misses an edge");
      }
    }
    ++graphs;
  }
  Digraph grid = gen::grid_bidirected(3, 4);
  RotorRouter router(grid);
  auto orbit = router.orbit(unicycle_at(grid, 0));
  o.expect(orbit.states.size() == 34, "3x4 grid orbit length " + std::to_string(orbit.states.size()) + " != 34");
  o.note(std::to_string(graphs) + " graphs (" + std::to_string(eulerian) + " Eulerian)");
  return o;
}

inline std::vector<std::pair<std::string, Digraph>> action_graphs(std::uint64_t seed) {
  std::vector<std::pair<std::string, Digraph>> out;
  out.push_back({"zero graph", gen::complete_with_sink(3)});
  for (long k = 2; k <= 4; ++k) out.push_back({"complete-with-sink " + std::to_string(k), gen::complete_with_sink(k)});
  out.push_back({"grid-wired 1", gen::grid_wired(1)});
  for (long k = 2; k <= 6; ++k) out.push_back({"path " + std::to_string(k), gen::path_bidirected(k)});
  out.push_back({"torus 2", gen::directed_torus(2)});
  out.push_back({"cycle 4 with sink", with_sink(gen::directed_cycle(4), 0)});
  out.push_back({"bidirected K3 with sink", gen::bidirected(3, {{0, 1}, {1, 2}, {0, 2}}, Vertex{2})});
  rnd::Engine rng(seed);
  int made = 0;
  for (int tries = 0; made < 40 && tries < 2000; ++tries) {
    long n = rnd::uniform(rng, 2, 6);
    Digraph g = rnd::multidigraph_with_sink(rng, n, rnd::uniform(rng, 0, 2 * n));
    if (determinant(reduced_laplacian(g)) > 60) continue;
    out.push_back({"random " + std::to_string(made++), std::move(g)});
  }
  return out;
}

inline Outcome free_transitive_action(std::uint64_t seed = 5) {
  Outcome o;
  std::size_t pairs = 0;
  for (auto& [name, g] : action_graphs(seed)) {
    Sandpile pile(g);
    RotorRouter router(g);
    auto trees = oracle::enumerate_spanning_trees(g, *g.sink());
    if (trees.count() > 60) continue;
    auto rec = recurrent_configs(pile);
    if (rec.size() != trees.count()) {
      o.fail(name + ": " + std::to_string(rec.size()) + " recurrent vs " + std::to_string(trees.count()) + " trees");
      continue;
    }
    std::set<RotorConfig> all_trees;
    for (auto& t : trees.items) all_trees.insert(tree_to_rotors(g, t));
    for (const auto& base : all_trees) {
      std::set<RotorConfig> image;
      for (const auto& s : rec) {
        RotorConfig t = router.act(s, base);
        image.insert(t);
        if (!all_trees.count(t)) o.fail(name + ": image is not a spanning tree");
        if (router.tree_action_solve(base, t) != s) o.fail(name + ": tree_action_solve does not invert the action");
        ++pairs;
      }
      o.expect(image == all_trees, name + ": action is not a bijection onto trees");
    }
  }
  o.note(std::to_string(pairs) + " (config, base tree) pairs");
  return o;
}

inline Outcome tour_formula(std::uint64_t seed = 7) {
  Outcome o;
  std::vector<std::pair<std::string, Digraph>> graphs;
  graphs.push_back({"bidirected K3", gen::bidirected(3, {{0, 1}, {1, 2}, {0, 2}})});
  for (long k = 3; k <= 5; ++k) graphs.push_back({"cycle " + std::to_string(k), gen::directed_cycle(k)});
  rnd::Engine rng(seed);
  for (int made = 0; made < 20;) {
    Digraph g = rnd::eulerian(rng, rnd::uniform(rng, 2, 5), rnd::uniform(rng, 1, 4), 4);
    if (g.edge_count() > 12) continue;
    graphs.push_back({"random Eulerian " + std::to_string(made++), std::move(g)});
  }
  for (auto& [name, g] : graphs) {
    RotorRouter router(g);
    for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e) {
      Vertex w = g.tail(e);
      auto tours = oracle::enumerate_eulerian_tours(g, e);
      Integer trees = oracle::count_spanning_trees(with_sink(g, w), w);
      Integer rhs = trees;
      for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) rhs *= factorial(g.out_degree(v) - 1);
      o.expect(Integer(static_cast<unsigned long>(tours.count())) == rhs,
               name + " edge " + std::to_string(e) + ": " + std::to_string(tours.count()) + " tours vs formula " +
                   rhs.get_str());
      // the rotor walk from a unicycle with rho(w) = e- traces one of them
      int d = g.out_degree(w);
      SingleChipState u = unicycle_at(g, w, (g.slot_of(e) + d - 1) % d);
      if (router.unicycle(u)) {
        auto tour = router.eulerian_tour(u, e);
        o.expect(std::find(tours.items.begin(), tours.items.end(), tour) != tours.items.end(),
                 name + ": rotor tour is not an Eulerian tour");
      }
    }
  }
  return o;
}

inline Outcome superstable_duality(std::uint64_t seed = 13) {
  Outcome o;
  auto family = small_eulerian_with_sink();
  for (const Digraph& g : family) {
    auto rec = oracle::recurrent_set_oracle(g);
    auto sup = oracle::superstable_set_oracle(g);
    std::set<oracle::Config> dual;
    for (const auto& c : rec) dual.insert(dual_of(g, c));
    if (sup != dual) o.fail("superstable set != delta-1-recurrent on " + io::serialize_graph(g));
  }
  rnd::Engine rng(seed);
  for (int k = 0; k < 100; ++k) {
    const Digraph& g = family[static_cast<std::size_t>(rnd::uniform(rng, 0, static_cast<long>(family.size()) - 1))];
    Sandpile pile(g);
    ChipConfig s = rnd::config(rng, pile, 6);
    auto a = oracle::random_cluster_firing(g, s.chips, rng());
    auto b = oracle::random_cluster_firing(g, s.chips, rng());
    ChipConfig want = pile.superstabilize(s);
    o.expect(a == b && a == want.chips, "cluster firing run " + std::to_string(k) + " is not confluent");
  }
  o.note(std::to_string(family.size()) + " graphs");
  return o;
}

inline Outcome bounds(std::uint64_t seed = 17) {
  Outcome o;
  rnd::Engine rng(seed);
  for (int k = 0; k < 50; ++k) {
    long n = rnd::uniform(rng, 2, 10);
    Digraph g = rnd::multidigraph_with_sink(rng, n, rnd::uniform(rng, 0, 3 * n));
    RotorRouter router(g);
    std::vector<Vertex> z{*g.sink()}, y;
    for (Vertex v = 0; v + 1 < n; ++v)
      if (rnd::uniform(rng, 0, 3) == 0) z.push_back(v);
    for (Vertex v : z)
      if (rnd::uniform(rng, 0, 1)) y.push_back(v);
    ChipConfig s(g.vertex_count());
    for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) s[v] = rnd::uniform(rng, 0, 20);
    auto hb = router.hitting_bound_check(y, z, s, rnd::rotors(rng, g));
    o.expect(hb.ok, "hitting bound fails on instance " + std::to_string(k) + ": |" + hb.lhs.get_str() + "| > " +
                        hb.rhs.get_str());
  }
  for (int k = 0; k < 50; ++k) {
    long n = rnd::uniform(rng, 2, 30);
    Digraph g = rnd::bidirected_with_sink(rng, n, rnd::uniform(rng, 0, 2 * n));
    Sandpile pile(g);
    ChipConfig s = rnd::config(rng, pile, 12);
    auto mb = pile.move_bound_check(s, max_effective_resistance(g));
    o.expect(mb.ok, "move bound fails on instance " + std::to_string(k));
  }
  return o;
}

inline StackConfig random_stacks(rnd::Engine& rng, const Digraph& g) {
  StackConfig s;
  s.stacks.resize(g.vertex_count());
  for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
    int d = g.out_degree(v);
    if (d == 0) continue;
    auto& base = s.stacks[v].base;
    for (int e = 0; e < d; ++e) base.push_back(e);
    for (long extra = rnd::uniform(rng, 0, 3); extra > 0; --extra) base.push_back(static_cast<int>(rnd::uniform(rng, 0, d - 1)));
    std::shuffle(base.begin(), base.end(), rng);
    s.stacks[v].offset = rnd::uniform(rng, -5, 5);
  }
  return s;
}

inline Outcome stack_engine(std::uint64_t seed = 19) {
  Outcome o;
  rnd::Engine rng(seed);
  auto random_graph = [&] {
    long n = rnd::uniform(rng, 2, 9);
    return rnd::multidigraph_with_sink(rng, n, rnd::uniform(rng, 0, 3 * n));
  };
  auto random_vertex = [&](const Digraph& g) { return static_cast<Vertex>(rnd::uniform(rng, 0, static_cast<long>(g.vertex_count()) - 2)); };
  for (int k = 0; k < 100; ++k) {
    Digraph g = random_graph();
    RotorRouter router(g);
    StackEngine eng(g);
    RotorConfig r = rnd::rotors(rng, g);
    Vertex v = random_vertex(g);
    auto rw = router.chip_add(r, v);
    auto sw = eng.chip_add(eng.from_rotors(r), v);
    o.expect(eng.top(sw.stacks) == rw.rotors && sw.path == rw.path, "periodic stacks disagree with rotors");
  }
  std::size_t nontrivial = 0;
  for (int k = 0; k < 100; ++k) {
    Digraph g = random_graph();
    StackEngine eng(g);
    StackConfig s = random_stacks(rng, g);
    auto a = eng.pop_to_acyclic(s);
    auto b = eng.pop_to_acyclic_random(s, rng());
    o.expect(a.stacks == b.stacks, "cycle popping is not confluent");
    o.expect(eng.find_cycle(a.stacks).empty(), "cycle popping left a cycle");
    if (!a.popped.empty()) ++nontrivial;
  }
  std::size_t hits = 0;
  for (int k = 0; k < 100; ++k) {
    Digraph g = random_graph();
    StackEngine eng(g);
    StackConfig s = random_stacks(rng, g);
    auto cycle = eng.find_cycle(s);
    if (cycle.empty() || rnd::uniform(rng, 0, 4) == 0) {
      cycle.clear();
      for (long len = rnd::uniform(rng, 1, 3); len > 0; --len) cycle.push_back(random_vertex(g));
    }
    Vertex v = random_vertex(g);
    auto lhs = eng.chip_add(eng.cycle_pop(s, cycle), v).stacks;
    auto fwd = eng.chip_add(s, v);
    auto rhs = eng.cycle_pop(fwd.stacks, cycle);
    o.expect(lhs == rhs, "chip addition does not commute with cycle popping");
    if (eng.is_top_cycle(s, cycle) &&
        std::any_of(fwd.path.begin(), fwd.path.end(), [&](Vertex u) { return std::count(cycle.begin(), cycle.end(), u) > 0; }))
      ++hits;
  }
  for (int k = 0; k < 100; ++k) {
    Digraph g = random_graph();
    StackEngine eng(g);
    StackConfig s = eng.pop_to_acyclic(random_stacks(rng, g)).stacks;
    Vertex v = random_vertex(g);
    StackConfig pre = eng.chip_add_inverse(s, v);
    o.expect(eng.find_cycle(pre).empty(), "inverse chip addition is not acyclic");
    auto walk = eng.chip_add(pre, v);
    o.expect(walk.stacks == s, "inverse chip addition round trip fails");
    o.expect(eng.top_path(s, v) == loop_erase(walk.path), "rho_0 path is not the loop erasure of the walk");
  }
  o.note(std::to_string(nontrivial) + " nontrivial poppings, " + std::to_string(hits) + " walks through the popped cycle");
  return o;
}

inline Outcome aggregation_square() {
  Outcome o;
  Aggregate a = aggregate(10'000, -2);
  o.expect(a.fired_set_is_square(), "fired set for n = 10^4 is not a square");
  o.note("n=10^4: C(" + std::to_string(a.fired_radius()) + ")");
  return o;
}

inline Outcome aggregation_square_large() {
  Outcome o;
  Aggregate a = aggregate(250'000, -2);
  o.expect(a.fired_set_is_square(), "fired set for n = 250000 is not a square");
  o.note("n=250000: C(" + std::to_string(a.fired_radius()) + ")");
  return o;
}

inline Outcome aggregation_inner_ball() {
  Outcome o;
  const double n = 1e5;
  const double r = std::sqrt(n / std::numbers::pi);
  for (Count h : {0, 1}) {
    Count hole = -h;
    double c1 = std::pow(3.0 + static_cast<double>(hole), -0.5);
    Aggregate a = aggregate(static_cast<Count>(n), hole);
    double rho = c1 * r - 10.0;
    o.expect(a.contains_ball(rho), "h=" + std::to_string(h) + ": ball of radius " + std::to_string(rho) + " not covered");
    o.note("h=" + std::to_string(h) + ": B_" + std::to_string(rho) + " covered, fired radius " + std::to_string(a.fired_radius()));
  }
  return o;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string identity_ppm(const Digraph& g, Palette p) {
  Sandpile pile(g);
  return to_ppm(render_config(g, pile.identity(), p));
}

inline Outcome figure_goldens(const std::filesystem::path& golden_dir) {
  Outcome o;
  struct Case {
    const char* file;
    Digraph g;
    Palette p;
  };
  std::vector<Case> cases;
  cases.push_back({"grid_wired_128_identity.ppm", gen::grid_wired(128), Palette::Grid4});
  cases.push_back({"torus_100_identity.ppm", gen::directed_torus(100), Palette::Torus2});
  for (auto& c : cases) {
    std::string first = identity_ppm(c.g, c.p);
    std::string second = identity_ppm(c.g, c.p);
    o.expect(first == second, std::string(c.file) + ": rendering is not deterministic");
    o.expect(first == read_file(golden_dir / c.file), std::string(c.file) + ": differs from golden");
  }
  return o;
}

inline Outcome large_identity(long size = 521) {
  Outcome o;
  Digraph g = gen::grid_wired(size);
  Sandpile pile(g);
  const ChipConfig& id = pile.identity();
  o.expect(pile.is_stable(id), "identity is not stable");
  o.note("grid-wired " + std::to_string(size) + " identity computed");
  return o;
}

/// Consistency checks on one graph: format round trip, and with a global
/// sink the Matrix-Tree count, policy agreement, chip conservation, group
/// laws and (small Eulerian cases) the recurrence and superstable oracles.
inline Outcome corpus_graph(const Digraph& g, std::uint64_t seed = 23) {
  Outcome o;
  o.expect(io::parse_graph(io::serialize_graph(g)) == g, "serialize/parse round trip changed the graph");
  auto info = classify(g);
  rnd::Engine rng(seed);
  if (!(info.has_global_sink && g.sink())) {
    if (info.strongly_connected && g.edge_count() <= 100'000) {
      RotorRouter router(g);
      auto orbit = router.orbit(unicycle_at(g, 0));
      if (info.eulerian) o.expect(orbit.states.size() == g.edge_count(), "Eulerian orbit length differs from |E|");
      o.note("orbit length " + std::to_string(orbit.states.size()));
    }
    return o;
  }
  Sandpile pile(g);
  const Vertex sink = *g.sink();
  if (g.vertex_count() <= 12)
    o.expect(pile.group_order() == oracle::count_spanning_trees(g, sink), "det differs from spanning-tree count");
  for (int k = 0; k < 5; ++k) {
    ChipConfig s = rnd::config(rng, pile, 3 * (1 + static_cast<Count>(g.edge_count() / g.vertex_count())));
    auto ref = pile.stabilize(s);
    for (auto p : {FiringPolicy::Fifo, FiringPolicy::Lifo}) {
      auto other = pile.stabilize(s, {p, std::nullopt, seed});
      o.expect(other.config == ref.config && other.odometer == ref.odometer, "firing policies disagree");
    }
    // conservation: final = initial - odometer * reduced Laplacian
    ChipConfig expect = s;
    for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
      Count f = ref.odometer.fires[v];
      if (f == 0) continue;
      expect[v] -= f * g.out_degree(v);
      for (const auto& a : g.arcs(v))
        if (a.head != sink) expect[a.head] += f * a.count;
    }
    o.expect(expect == ref.config, "chips are not conserved by the odometer");
    auto verts = pile.non_sink_vertices();
    Vertex a = verts[static_cast<std::size_t>(rnd::uniform(rng, 0, static_cast<long>(verts.size()) - 1))];
    Vertex b = verts[static_cast<std::size_t>(rnd::uniform(rng, 0, static_cast<long>(verts.size()) - 1))];
    o.expect(pile.chip_add(pile.chip_add(s, a), b) == pile.chip_add(pile.chip_add(s, b), a), "E_a and E_b do not commute");
  }
  const ChipConfig& id = pile.identity();
  o.expect(pile.is_stable(id) && pile.is_recurrent(id), "identity is not recurrent");
  for (int k = 0; k < 3; ++k) {
    ChipConfig r = rnd::recurrent(rng, pile);
    o.expect(pile.group_add(r, id) == r, "identity law fails");
    o.expect(pile.group_add(r, pile.inverse(r)) == id, "inverse law fails");
  }
  std::uint64_t states = 1;
  for (Vertex v : pile.non_sink_vertices()) states = std::min<std::uint64_t>(states * static_cast<std::uint64_t>(g.out_degree(v)), oracle::kMaxStates + 1);
  if (states <= 20'000 && pile.non_sink_vertices().size() <= oracle::kMaxSuperstableVertices) {
    auto rec = oracle::recurrent_set_oracle(g);
    std::set<oracle::Config> engine;
    for (const auto& c : recurrent_configs(pile)) engine.insert(c.chips);
    o.expect(rec == engine, "recurrent set differs from the terminal-component oracle");
    if (info.eulerian_with_sink) {
      std::set<oracle::Config> dual;
      for (const auto& c : rec) dual.insert(dual_of(g, c));
      o.expect(oracle::superstable_set_oracle(g) == dual, "superstable set is not delta - 1 - recurrent");
    }
  }
  if (info.bidirected_with_sink && g.vertex_count() <= 2000) {
    auto mb = pile.move_bound_check(rnd::config(rng, pile, 10), max_effective_resistance(g));
    o.expect(mb.ok, "move bound fails");
  }
  o.note("order " + pile.group_order().get_str());
  return o;
}

}  // namespace sandlab::verify
