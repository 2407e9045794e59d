#pragma once

// Brute-force ground truth for tests. Nothing here calls the stabilization,
// recurrence or rotor-routing code of the engines; each routine works from
// the graph's edge lists directly and fails loudly past its size guard.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <unordered_map>
#include <vector>

#include "sandlab/classify.hpp"
#include "sandlab/errors.hpp"
#include "sandlab/graph.hpp"
#include "sandlab/types.hpp"

namespace sandlab::oracle {

template <typename Item>
struct EnumerationResult {
  std::vector<Item> items;
  std::size_t count() const noexcept { return items.size(); }
};

using EdgeSet = std::vector<EdgeId>;   // one out-edge per non-root vertex, ascending by tail
using EdgeSeq = std::vector<EdgeId>;
using Config = std::vector<Count>;     // chip counts over all vertices

inline constexpr std::size_t kMaxTreeVertices = 12;
inline constexpr std::size_t kMaxListedTrees = 2'000'000;
inline constexpr std::size_t kMaxTourEdges = 16;
inline constexpr std::uint64_t kMaxStates = 100'000;
inline constexpr std::size_t kMaxSuperstableVertices = 12;

/// Oriented spanning trees rooted at `root`: each other vertex picks one
/// out-edge and the picks contain no cycle. Parallel edges count separately.
inline EnumerationResult<EdgeSet> enumerate_spanning_trees(const Digraph& g, Vertex root) {
  const auto n = static_cast<Vertex>(g.vertex_count());
  if (g.vertex_count() > kMaxTreeVertices) throw SizeGuard("spanning-tree enumeration limited to 12 vertices");
  detail::require(root >= 0 && root < n, "root out of range");
  EnumerationResult<EdgeSet> res;
  std::vector<Vertex> order;
  for (Vertex v = 0; v < n; ++v)
    if (v != root) order.push_back(v);
  std::vector<EdgeId> pick(n, -1);
  // chosen parent pointer; -1 = unassigned
  std::vector<Vertex> parent(n, -1);

  auto closes_cycle = [&](Vertex v) {
    Vertex u = parent[v];
    for (Vertex k = 0; k <= n; ++k) {
      if (u == v) return true;
      if (u == root || u < 0 || parent[u] < 0) return false;
      u = parent[u];
    }
    return true;
  };

  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == order.size()) {
      EdgeSet t;
      for (Vertex v : order) t.push_back(pick[v]);
      res.items.push_back(std::move(t));
      if (res.items.size() > kMaxListedTrees) throw SizeGuard("too many spanning trees to list");
      return;
    }
    Vertex v = order[i];
    for (int s = 0; s < g.out_degree(v); ++s) {
      EdgeId e = g.out_edge(v, s);
      parent[v] = g.head(e);
      pick[v] = e;
      if (!closes_cycle(v)) self(self, i + 1);
    }
    parent[v] = -1;
    pick[v] = -1;
  };
  rec(rec, 0);
  return res;
}

/// Number of oriented spanning trees rooted at `root`, by dynamic
/// programming over breadth-first layers of the tree: a tree is an ordered
/// partition of the other vertices into layers L1, L2, ..., where every
/// vertex of L(k+1) picks an edge into L(k). About 4^(n-1) work.
inline Integer count_spanning_trees(const Digraph& g, Vertex root) {
  const auto n = static_cast<Vertex>(g.vertex_count());
  detail::require(root >= 0 && root < n, "root out of range");
  if (g.vertex_count() > 14) throw SizeGuard("spanning-tree counting limited to 14 vertices");
  std::vector<Vertex> others;
  std::vector<int> bit(n, -1);
  for (Vertex v = 0; v < n; ++v)
    if (v != root) bit[v] = static_cast<int>(others.size()), others.push_back(v);
  const int m = static_cast<int>(others.size());
  const std::uint32_t full = (1u << m) - 1;
  // into[i][L]: edges from others[i] into the vertex set L (bit m = root)
  const std::uint32_t sets = 1u << (m + 1);
  std::vector<std::vector<Count>> into(m, std::vector<Count>(sets, 0));
  for (int i = 0; i < m; ++i) {
    std::vector<Count> direct(m + 1, 0);
    for (const auto& a : g.arcs(others[i])) direct[a.head == root ? m : bit[a.head]] += a.count;
    for (std::uint32_t L = 1; L < sets; ++L) {
      int low = __builtin_ctz(L);
      into[i][L] = into[i][L & (L - 1)] + direct[low];
    }
  }
  std::unordered_map<std::uint64_t, Integer> memo;
  auto f = [&](auto&& self, std::uint32_t rest, std::uint32_t layer) -> Integer {
    if (rest == 0) return 1;
    std::uint64_t key = (static_cast<std::uint64_t>(rest) << 32) | layer;
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Integer total = 0;
    // vertices of rest that can attach to the current layer
    std::uint32_t able = 0;
    for (int i = 0; i < m; ++i)
      if ((rest >> i & 1) && into[i][layer] > 0) able |= 1u << i;
    for (std::uint32_t next = able; next; next = (next - 1) & able) {
      Integer ways = 1;
      for (std::uint32_t b = next; b; b &= b - 1) ways *= static_cast<long>(into[__builtin_ctz(b)][layer]);
      total += ways * self(self, rest & ~next, next);
    }
    memo.emplace(key, total);
    return total;
  };
  return f(f, full, 1u << m);
}

/// Eulerian tours starting with edge e, as edge sequences.
inline EnumerationResult<EdgeSeq> enumerate_eulerian_tours(const Digraph& g, EdgeId e) {
  detail::require(classify(g).eulerian, "Eulerian tours need an Eulerian digraph");
  if (g.edge_count() > kMaxTourEdges) throw SizeGuard("tour enumeration limited to 16 edges");
  detail::require(e >= 0 && e < static_cast<EdgeId>(g.edge_count()), "edge out of range");
  EnumerationResult<EdgeSeq> res;
  std::vector<char> used(g.edge_count(), 0);
  EdgeSeq seq{e};
  used[e] = 1;
  auto rec = [&](auto&& self, Vertex at) -> void {
    if (seq.size() == g.edge_count()) {
      if (at == g.tail(e)) res.items.push_back(seq);
      return;
    }
    for (int s = 0; s < g.out_degree(at); ++s) {
      EdgeId x = g.out_edge(at, s);
      if (used[x]) continue;
      used[x] = 1;
      seq.push_back(x);
      self(self, g.head(x));
      seq.pop_back();
      used[x] = 0;
    }
  };
  rec(rec, g.head(e));
  return res;
}

namespace impl {

inline std::vector<Vertex> chip_vertices(const Digraph& g) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v)
    if (!(g.sink() && *g.sink() == v)) out.push_back(v);
  return out;
}

// One firing straight from the edge list; chips sent to the sink vanish.
inline void fire(const Digraph& g, Config& c, Vertex v) {
  c[v] -= g.out_degree(v);
  for (int s = 0; s < g.out_degree(v); ++s) {
    Vertex w = g.head(g.out_edge(v, s));
    if (!(g.sink() && *g.sink() == w)) ++c[w];
  }
}

// Fires the lowest-indexed active vertex, one firing at a time.
inline void stabilize_naive(const Digraph& g, Config& c) {
  const auto n = static_cast<Vertex>(g.vertex_count());
  for (std::uint64_t steps = 0;; ++steps) {
    if (steps > 100'000'000) throw InternalError("naive stabilization did not finish");
    Vertex v = 0;
    while (v < n && !((!g.sink() || *g.sink() != v) && g.out_degree(v) > 0 && c[v] >= g.out_degree(v))) ++v;
    if (v == n) return;
    fire(g, c, v);
  }
}

// Stable configurations in mixed radix over the chip vertices.
struct StableSpace {
  std::vector<Vertex> verts;
  std::vector<Count> radix;
  std::uint64_t size = 1;

  explicit StableSpace(const Digraph& g) : verts(chip_vertices(g)) {
    for (Vertex v : verts) {
      Count d = g.out_degree(v);
      if (d == 0) throw InvalidInput("a non-sink vertex has no out-edges");
      radix.push_back(d);
      if (size > kMaxStates / static_cast<std::uint64_t>(d)) throw SizeGuard("too many stable configurations");
      size *= static_cast<std::uint64_t>(d);
    }
  }
  Config decode(std::uint64_t code, std::size_t n) const {
    Config c(n, 0);
    for (std::size_t i = 0; i < verts.size(); ++i) {
      c[verts[i]] = static_cast<Count>(code % radix[i]);
      code /= radix[i];
    }
    return c;
  }
  std::uint64_t encode(const Config& c) const {
    std::uint64_t code = 0;
    for (std::size_t i = verts.size(); i-- > 0;) code = code * radix[i] + static_cast<std::uint64_t>(c[verts[i]]);
    return code;
  }
};

// Strongly connected components of a graph given by adjacency lists.
inline std::vector<int> scc_ids(const std::vector<std::vector<std::uint64_t>>& adj, int& count) {
  const std::size_t n = adj.size();
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<std::uint64_t> stack;
  std::vector<char> on_stack(n, 0);
  int next = 0;
  count = 0;
  std::vector<std::pair<std::uint64_t, std::size_t>> call;
  for (std::uint64_t s = 0; s < n; ++s) {
    if (index[s] >= 0) continue;
    call.push_back({s, 0});
    index[s] = low[s] = next++;
    stack.push_back(s);
    on_stack[s] = 1;
    while (!call.empty()) {
      auto& [v, i] = call.back();
      if (i < adj[v].size()) {
        std::uint64_t w = adj[v][i++];
        if (index[w] < 0) {
          index[w] = low[w] = next++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      std::uint64_t done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        while (true) {
          std::uint64_t w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = count;
          if (w == done) break;
        }
        ++count;
      }
    }
  }
  return comp;
}

}  // namespace impl

/// Recurrent configurations as the unique terminal strongly connected
/// component of the chip-addition graph tau -> E_v tau on stable states.
inline std::set<Config> recurrent_set_oracle(const Digraph& g) {
  detail::require(classify(g).has_global_sink && g.sink(), "recurrence oracle needs a designated global sink");
  impl::StableSpace space(g);
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<std::uint64_t>> adj(space.size);
  for (std::uint64_t code = 0; code < space.size; ++code) {
    Config c = space.decode(code, n);
    for (Vertex v : space.verts) {
      Config d = c;
      ++d[v];
      impl::stabilize_naive(g, d);
      adj[code].push_back(space.encode(d));
    }
  }
  int count = 0;
  auto comp = impl::scc_ids(adj, count);
  std::vector<char> terminal(count, 1);
  for (std::uint64_t v = 0; v < space.size; ++v)
    for (auto w : adj[v])
      if (comp[w] != comp[v]) terminal[comp[v]] = 0;
  int which = -1;
  for (int k = 0; k < count; ++k)
    if (terminal[k]) {
      if (which >= 0) throw InternalError("chip-addition graph has two terminal components");
      which = k;
    }
  std::set<Config> out;
  for (std::uint64_t v = 0; v < space.size; ++v)
    if (comp[v] == which) out.insert(space.decode(v, n));
  return out;
}

/// Whether firing every vertex of `cluster` at once keeps all counts
/// nonnegative; returns the result if so.
inline std::optional<Config> cluster_fire(const Digraph& g, const Config& c, const std::vector<Vertex>& cluster) {
  Config d = c;
  for (Vertex v : cluster) impl::fire(g, d, v);
  for (Vertex v : cluster)
    if (d[v] < 0) return std::nullopt;
  return d;
}

/// Nonempty clusters of chip vertices, as bitmasks over chip_vertices order.
inline std::vector<std::vector<Vertex>> all_clusters(const Digraph& g) {
  auto verts = impl::chip_vertices(g);
  if (verts.size() > kMaxSuperstableVertices) throw SizeGuard("cluster enumeration limited to 12 non-sink vertices");
  std::vector<std::vector<Vertex>> out;
  for (std::uint32_t mask = 1; mask < (1u << verts.size()); ++mask) {
    std::vector<Vertex> a;
    for (std::size_t i = 0; i < verts.size(); ++i)
      if (mask >> i & 1) a.push_back(verts[i]);
    out.push_back(std::move(a));
  }
  return out;
}

inline bool is_superstable(const Digraph& g, const Config& c) {
  for (const auto& a : all_clusters(g))
    if (cluster_fire(g, c, a)) return false;
  return true;
}

/// Superstable configurations by testing every cluster on every stable one
/// (superstable implies stable, via singleton clusters).
inline std::set<Config> superstable_set_oracle(const Digraph& g) {
  impl::StableSpace space(g);
  auto clusters = all_clusters(g);
  std::set<Config> out;
  for (std::uint64_t code = 0; code < space.size; ++code) {
    Config c = space.decode(code, g.vertex_count());
    bool any = false;
    for (const auto& a : clusters)
      if (cluster_fire(g, c, a)) {
        any = true;
        break;
      }
    if (!any) out.insert(std::move(c));
  }
  return out;
}

/// Fires uniformly random legal clusters until none is legal.
inline Config random_cluster_firing(const Digraph& g, Config c, std::uint64_t seed, std::uint64_t cap = 1'000'000) {
  std::mt19937_64 rng(seed);
  auto clusters = all_clusters(g);
  for (std::uint64_t k = 0; k < cap; ++k) {
    std::vector<Config> options;
    for (const auto& a : clusters)
      if (auto d = cluster_fire(g, c, a)) options.push_back(std::move(*d));
    if (options.empty()) return c;
    c = std::move(options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)]);
  }
  throw InternalError("cluster firing did not stop");
}

/// Single-chip rotor state encoded as (chip, slot of every vertex).
struct RotorState {
  Vertex chip;
  std::vector<int> slots;
  friend auto operator<=>(const RotorState&, const RotorState&) = default;
};

/// States of the single-chip rotor walk on a sink-free digraph that lie on
/// a closed orbit, found by iterating the walk on the full state space.
inline std::set<RotorState> closed_orbit_states(const Digraph& g) {
  const auto n = static_cast<Vertex>(g.vertex_count());
  std::uint64_t rotor_space = 1;
  for (Vertex v = 0; v < n; ++v) {
    detail::require(g.out_degree(v) > 0, "closed-orbit oracle needs every vertex to have out-edges");
    rotor_space *= static_cast<std::uint64_t>(g.out_degree(v));
    if (rotor_space * static_cast<std::uint64_t>(n) > kMaxStates) throw SizeGuard("too many rotor states");
  }
  const std::uint64_t total = rotor_space * static_cast<std::uint64_t>(n);
  auto decode = [&](std::uint64_t code) {
    RotorState s{static_cast<Vertex>(code % static_cast<std::uint64_t>(n)), std::vector<int>(n)};
    code /= static_cast<std::uint64_t>(n);
    for (Vertex v = 0; v < n; ++v) {
      s.slots[v] = static_cast<int>(code % static_cast<std::uint64_t>(g.out_degree(v)));
      code /= static_cast<std::uint64_t>(g.out_degree(v));
    }
    return s;
  };
  auto encode = [&](const RotorState& s) {
    std::uint64_t code = 0;
    for (Vertex v = n; v-- > 0;) code = code * static_cast<std::uint64_t>(g.out_degree(v)) + static_cast<std::uint64_t>(s.slots[v]);
    return code * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(s.chip);
  };
  std::vector<std::uint64_t> next(total);
  for (std::uint64_t code = 0; code < total; ++code) {
    RotorState s = decode(code);
    int d = g.out_degree(s.chip);
    s.slots[s.chip] = (s.slots[s.chip] + 1) % d;
    s.chip = g.head(g.out_edge(s.chip, s.slots[s.chip]));
    next[code] = encode(s);
  }
  // a state is on a cycle iff it is reached again after `total` steps from
  // some point of its own forward orbit; mark cycles by walking each tail.
  std::vector<char> color(total, 0);  // 0 new, 1 on current walk, 2 done
  std::vector<char> cyclic(total, 0);
  for (std::uint64_t s = 0; s < total; ++s) {
    if (color[s]) continue;
    std::vector<std::uint64_t> walk;
    std::uint64_t v = s;
    while (!color[v]) {
      color[v] = 1;
      walk.push_back(v);
      v = next[v];
    }
    if (color[v] == 1)
      for (std::uint64_t u = v;;) {
        cyclic[u] = 1;
        u = next[u];
        if (u == v) break;
      }
    for (auto u : walk) color[u] = 2;
  }
  std::set<RotorState> out;
  for (std::uint64_t s = 0; s < total; ++s)
    if (cyclic[s]) out.insert(decode(s));
  return out;
}

}  // namespace sandlab::oracle
