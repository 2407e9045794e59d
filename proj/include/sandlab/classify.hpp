#pragma once

#include <optional>
#include <vector>

#include "sandlab/algebra.hpp"
#include "sandlab/graph.hpp"

namespace sandlab {

struct GraphClassification {
  bool has_global_sink = false;
  std::optional<Vertex> global_sink;
  bool strongly_connected = false;
  /// Strongly connected with indeg = outdeg at every vertex.
  bool eulerian = false;
  /// A global sink exists and restoring outdeg-indeg edges out of it gives an
  /// Eulerian digraph.
  bool eulerian_with_sink = false;
  /// a_vw = a_wv for all v != w.
  bool bidirected = false;
  /// a_vw = a_wv for all non-sink v != w (edges into the sink unconstrained).
  bool bidirected_with_sink = false;
  /// Strongly connected components of G minus its sink (all of G if no sink).
  std::vector<std::vector<Vertex>> scc_list;
};

namespace detail {

// Iterative Tarjan on the subgraph induced by vertices with keep[v].
inline std::vector<std::vector<Vertex>> tarjan_scc(const Digraph& g, const std::vector<char>& keep) {
  const auto n = static_cast<Vertex>(g.vertex_count());
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<Vertex> stack;
  std::vector<std::vector<Vertex>> out;
  int counter = 0;
  struct Frame {
    Vertex v;
    std::size_t next;
  };
  std::vector<Frame> call;
  for (Vertex root = 0; root < n; ++root) {
    if (!keep[root] || index[root] >= 0) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      auto arcs = g.arcs(f.v);
      if (f.next < arcs.size()) {
        Vertex w = arcs[f.next++].head;
        if (!keep[w]) continue;
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      Vertex v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<Vertex> comp;
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
      }
    }
  }
  return out;
}

// Vertices from which `target` is reachable.
inline std::vector<char> reaches(const Digraph& g, Vertex target) {
  const auto n = static_cast<Vertex>(g.vertex_count());
  std::vector<std::vector<Vertex>> reverse(n);
  for (Vertex v = 0; v < n; ++v)
    for (const auto& a : g.arcs(v)) reverse[a.head].push_back(v);
  std::vector<char> seen(n, 0);
  std::vector<Vertex> todo{target};
  seen[target] = 1;
  while (!todo.empty()) {
    Vertex v = todo.back();
    todo.pop_back();
    for (Vertex u : reverse[v])
      if (!seen[u]) {
        seen[u] = 1;
        todo.push_back(u);
      }
  }
  return seen;
}

inline bool all_of(const std::vector<char>& flags) {
  return std::all_of(flags.begin(), flags.end(), [](char c) { return c != 0; });
}

inline bool strongly_connected(const Digraph& g) {
  if (g.vertex_count() == 0) return true;
  std::vector<char> keep(g.vertex_count(), 1);
  return tarjan_scc(g, keep).size() == 1;
}

}  // namespace detail

/// Global sink of g: the designated sink if it is reachable from every vertex,
/// or otherwise the unique out-degree-0 vertex reachable from everywhere.
inline std::optional<Vertex> find_global_sink(const Digraph& g) {
  const auto n = static_cast<Vertex>(g.vertex_count());
  auto check = [&](Vertex s) { return g.is_sink(s) && detail::all_of(detail::reaches(g, s)); };
  if (g.sink()) return check(*g.sink()) ? g.sink() : std::nullopt;
  std::optional<Vertex> found;
  for (Vertex v = 0; v < n; ++v) {
    if (!g.is_sink(v)) continue;
    if (found) return std::nullopt;
    found = v;
  }
  if (found && check(*found)) return found;
  return std::nullopt;
}

inline GraphClassification classify(const Digraph& g) {
  GraphClassification c;
  const auto n = static_cast<Vertex>(g.vertex_count());
  c.global_sink = find_global_sink(g);
  c.has_global_sink = c.global_sink.has_value();
  c.strongly_connected = detail::strongly_connected(g);

  bool balanced = true;
  for (Vertex v = 0; v < n; ++v) balanced = balanced && g.in_degree(v) == g.out_degree(v);
  c.eulerian = c.strongly_connected && balanced;

  auto symmetric_off = [&](std::optional<Vertex> skip) {
    for (Vertex v = 0; v < n; ++v) {
      if (skip && v == *skip) continue;
      for (const auto& a : g.arcs(v)) {
        if (a.head == v || (skip && a.head == *skip)) continue;
        if (g.multiplicity(a.head, v) != a.count) return false;
      }
    }
    return true;
  };
  c.bidirected = symmetric_off(std::nullopt);

  if (c.has_global_sink) {
    const Vertex s = *c.global_sink;
    c.bidirected_with_sink = symmetric_off(s);
    bool surplus = true;
    std::vector<Edge> restored = g.edges();
    for (Vertex v = 0; v < n; ++v) {
      if (v == s) continue;
      int beta = g.out_degree(v) - g.in_degree(v);
      if (beta < 0) surplus = false;
      for (int k = 0; k < beta; ++k) restored.push_back({s, v});
    }
    if (surplus) {
      Digraph r = Digraph::build(g.vertex_count(), restored);
      c.eulerian_with_sink = detail::strongly_connected(r);
    }
  }

  std::vector<char> keep(n, 1);
  if (c.global_sink) keep[*c.global_sink] = 0;
  else if (g.sink()) keep[*g.sink()] = 0;
  c.scc_list = detail::tarjan_scc(g, keep);
  std::sort(c.scc_list.begin(), c.scc_list.end());
  return c;
}

/// Graph Laplacian D - A (diagonal d_i - a_ii).
inline IntegerMatrix laplacian(const Digraph& g) {
  const auto n = g.vertex_count();
  IntegerMatrix m(n);
  for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
    m(v, v) = g.out_degree(v);
    for (const auto& a : g.arcs(v)) m(v, a.head) -= a.count;
  }
  return m;
}

/// Laplacian with the row and column of `root` deleted. Labels are the
/// remaining vertices in ascending order.
inline IntegerMatrix reduced_laplacian(const Digraph& g, Vertex root) {
  const auto n = static_cast<Vertex>(g.vertex_count());
  detail::require(root >= 0 && root < n, "root out of range");
  std::vector<Vertex> labels;
  std::vector<int> index(n, -1);
  for (Vertex v = 0; v < n; ++v)
    if (v != root) {
      index[v] = static_cast<int>(labels.size());
      labels.push_back(v);
    }
  IntegerMatrix m(labels.size(), labels);
  for (Vertex v = 0; v < n; ++v) {
    if (v == root) continue;
    m(index[v], index[v]) += g.out_degree(v);
    for (const auto& a : g.arcs(v))
      if (a.head != root) m(index[v], index[a.head]) -= a.count;
  }
  return m;
}

inline IntegerMatrix reduced_laplacian(const Digraph& g) {
  return reduced_laplacian(g, g.require_sink());
}

}  // namespace sandlab
