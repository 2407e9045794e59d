#pragma once

// Random graphs and configurations for property checks. All generators take
// an explicit engine so runs are reproducible from a seed.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "sandlab/graph.hpp"
#include "sandlab/rotor.hpp"
#include "sandlab/sandpile.hpp"

namespace sandlab::rnd {

using Engine = std::mt19937_64;

inline long uniform(Engine& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

// Shuffles the cyclic order at every vertex.
inline std::vector<Edge> shuffle_by_tail(std::vector<Edge> edges, Engine& rng) {
  std::shuffle(edges.begin(), edges.end(), rng);
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.tail < b.tail; });
  return edges;
}

/// Multidigraph on n vertices with sink n-1 that is globally reachable.
/// Every non-sink vertex gets a random edge to a vertex closer to the sink
/// in a random ordering, plus `extra` edges anywhere (loops and parallel
/// edges allowed).
inline Digraph multidigraph_with_sink(Engine& rng, long n, long extra) {
  detail::require(n >= 1, "need at least one vertex");
  std::vector<Vertex> order(n - 1);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  order.push_back(static_cast<Vertex>(n - 1));
  std::vector<Edge> edges;
  for (long i = 0; i + 1 < n; ++i) edges.push_back({order[i], order[uniform(rng, i + 1, n - 1)]});
  for (long k = 0; k < extra && n > 1; ++k)
    edges.push_back({static_cast<Vertex>(uniform(rng, 0, n - 2)), static_cast<Vertex>(uniform(rng, 0, n - 1))});
  return Digraph::build(n, shuffle_by_tail(std::move(edges), rng), static_cast<Vertex>(n - 1));
}

/// Strongly connected multidigraph with indeg = outdeg everywhere: a random
/// Hamiltonian cycle plus `cycles` random closed walks of length 1..max_len.
inline Digraph eulerian(Engine& rng, long n, long cycles, long max_len) {
  detail::require(n >= 1, "need at least one vertex");
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Edge> edges;
  if (n > 1)
    for (long i = 0; i < n; ++i) edges.push_back({perm[i], perm[(i + 1) % n]});
  for (long c = 0; c < cycles; ++c) {
    long len = uniform(rng, 1, max_len);
    std::vector<Vertex> walk;
    for (long i = 0; i < len; ++i) walk.push_back(static_cast<Vertex>(uniform(rng, 0, n - 1)));
    for (long i = 0; i < len; ++i) edges.push_back({walk[i], walk[(i + 1) % len]});
  }
  if (edges.empty()) edges.push_back({0, 0});
  return Digraph::build(n, shuffle_by_tail(std::move(edges), rng), std::nullopt);
}

/// Connected bidirected multigraph with sink n-1: a random tree plus
/// `extra` random undirected edges (no loops).
inline Digraph bidirected_with_sink(Engine& rng, long n, long extra) {
  detail::require(n >= 2, "need at least two vertices");
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (long v = 1; v < n; ++v) pairs.push_back({static_cast<Vertex>(v), static_cast<Vertex>(uniform(rng, 0, v - 1))});
  for (long k = 0; k < extra; ++k) {
    auto a = static_cast<Vertex>(uniform(rng, 0, n - 1)), b = static_cast<Vertex>(uniform(rng, 0, n - 1));
    if (a != b) pairs.push_back({a, b});
  }
  std::vector<Edge> edges;
  for (auto [a, b] : pairs) {
    edges.push_back({a, b});
    edges.push_back({b, a});
  }
  return with_sink(Digraph::build(n, shuffle_by_tail(std::move(edges), rng), std::nullopt), static_cast<Vertex>(n - 1));
}

/// Independent uniform chip counts in [0, max_chips] off the sink.
inline ChipConfig config(Engine& rng, const Sandpile& pile, Count max_chips) {
  ChipConfig c = pile.zero();
  for (Vertex v : pile.non_sink_vertices()) c[v] = uniform(rng, 0, max_chips);
  return c;
}

inline ChipConfig recurrent(Engine& rng, const Sandpile& pile) {
  return pile.recurrent_representative(SignedConfig{config(rng, pile, 8).chips});
}

inline RotorConfig rotors(Engine& rng, const Digraph& g) {
  RotorConfig r;
  r.slots.resize(g.vertex_count());
  for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v)
    r.slots[v] = g.out_degree(v) == 0 ? -1 : static_cast<int>(uniform(rng, 0, g.out_degree(v) - 1));
  return r;
}

/// Random acyclic rotor configuration: the last edge of a rotor walk from
/// each vertex in turn (a loop-erased walk tree, as in Wilson's method).
inline RotorConfig tree(Engine& rng, const Digraph& g) {
  const auto n = static_cast<Vertex>(g.vertex_count());
  RotorConfig r;
  r.slots.assign(n, -1);
  std::vector<char> in_tree(n, 0);
  for (Vertex v = 0; v < n; ++v)
    if (g.out_degree(v) == 0) in_tree[v] = 1;
  for (Vertex start = 0; start < n; ++start) {
    for (Vertex v = start; !in_tree[v]; v = g.out_heads(v)[r.slots[v]])
      r.slots[v] = static_cast<int>(uniform(rng, 0, g.out_degree(v) - 1));
    for (Vertex v = start; !in_tree[v]; v = g.out_heads(v)[r.slots[v]]) in_tree[v] = 1;
  }
  return r;
}

}  // namespace sandlab::rnd
