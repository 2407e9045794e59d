#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sandlab/errors.hpp"
#include "sandlab/types.hpp"

namespace sandlab {

struct Edge {
  Vertex tail;
  Vertex head;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Coord {
  std::int64_t x;
  std::int64_t y;
  friend bool operator==(const Coord&, const Coord&) = default;
};

/// Aggregated adjacency entry: `count` parallel edges towards `head`.
struct Arc {
  Vertex head;
  Count count;
};

/// Finite multidigraph with a cyclic order on the out-edges of each vertex.
///
/// Edge identifiers are assigned grouped by tail: the out-edges of v are the
/// contiguous ids first_edge(v) .. first_edge(v)+outdeg(v)-1, in the order
/// they were listed. That order is the rotor order e -> e+, so two graphs
/// compare equal exactly when their per-vertex head sequences agree.
class Digraph {
 public:
  Digraph() = default;

  /// Builds a digraph from an edge list. The position of an edge among the
  /// listed edges with the same tail defines its slot in the cyclic order.
  static Digraph build(std::size_t n, std::span<const Edge> edges,
                       std::optional<Vertex> sink = std::nullopt,
                       std::vector<std::optional<Coord>> embedding = {}) {
    Digraph g;
    g.n_ = n;
    for (const auto& e : edges) {
      detail::require(e.tail >= 0 && static_cast<std::size_t>(e.tail) < n && e.head >= 0 &&
                          static_cast<std::size_t>(e.head) < n,
                      "edge (" + std::to_string(e.tail) + "," + std::to_string(e.head) +
                          ") has a vertex index out of range");
    }
    if (sink) {
      detail::require(*sink >= 0 && static_cast<std::size_t>(*sink) < n,
                      "sink index out of range");
      for (const auto& e : edges)
        detail::require(e.tail != *sink, "edge leaves the sink vertex " + std::to_string(*sink));
    }
    g.sink_ = sink;

    g.offsets_.assign(n + 1, 0);
    for (const auto& e : edges) ++g.offsets_[e.tail + 1];
    for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];
    g.heads_.resize(edges.size());
    g.tails_.resize(edges.size());
    std::vector<EdgeId> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& e : edges) {
      EdgeId id = fill[e.tail]++;
      g.heads_[id] = e.head;
      g.tails_[id] = e.tail;
    }

    g.indegree_.assign(n, 0);
    for (const auto& e : edges) ++g.indegree_[e.head];

    // Aggregate parallel edges per (tail, head), first-appearance order.
    g.arc_offsets_.assign(n + 1, 0);
    std::vector<std::int64_t> slot(n, -1);
    for (std::size_t v = 0; v < n; ++v) {
      std::size_t begin = g.arcs_.size();
      for (EdgeId e = g.offsets_[v]; e < g.offsets_[v + 1]; ++e) {
        Vertex h = g.heads_[e];
        if (slot[h] < 0) {
          slot[h] = static_cast<std::int64_t>(g.arcs_.size());
          g.arcs_.push_back({h, 0});
        }
        ++g.arcs_[slot[h]].count;
      }
      for (std::size_t i = begin; i < g.arcs_.size(); ++i) slot[g.arcs_[i].head] = -1;
      g.arc_offsets_[v + 1] = static_cast<EdgeId>(g.arcs_.size());
    }

    if (!embedding.empty()) {
      detail::require(embedding.size() == n, "embedding must list every vertex");
      g.coords_ = std::move(embedding);
    }
    return g;
  }

  static Digraph build(std::size_t n, std::initializer_list<Edge> edges,
                       std::optional<Vertex> sink = std::nullopt) {
    return build(n, std::span<const Edge>(edges.begin(), edges.size()), sink);
  }

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return heads_.size(); }

  Edge edge(EdgeId e) const { return {tails_[e], heads_[e]}; }
  Vertex head(EdgeId e) const { return heads_[e]; }
  Vertex tail(EdgeId e) const { return tails_[e]; }

  int out_degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  int in_degree(Vertex v) const { return indegree_[v]; }

  EdgeId first_edge(Vertex v) const { return offsets_[v]; }
  /// The out-edge of v at position `slot` of its cyclic order.
  EdgeId out_edge(Vertex v, int slot) const { return offsets_[v] + slot; }
  /// Position of e in the cyclic order at its tail.
  int slot_of(EdgeId e) const { return e - offsets_[tails_[e]]; }
  /// Heads of v's out-edges in cyclic order.
  std::span<const Vertex> out_heads(Vertex v) const {
    return {heads_.data() + offsets_[v], static_cast<std::size_t>(out_degree(v))};
  }
  std::span<const Arc> arcs(Vertex v) const {
    return {arcs_.data() + arc_offsets_[v],
            static_cast<std::size_t>(arc_offsets_[v + 1] - arc_offsets_[v])};
  }
  /// a_{vw}: number of edges from v to w.
  Count multiplicity(Vertex v, Vertex w) const {
    for (const auto& a : arcs(v))
      if (a.head == w) return a.count;
    return 0;
  }

  bool is_sink(Vertex v) const { return out_degree(v) == 0; }
  std::optional<Vertex> sink() const noexcept { return sink_; }
  /// Designated sink; throws when none was set.
  Vertex require_sink() const {
    if (!sink_) throw InvalidInput("graph has no designated sink");
    return *sink_;
  }

  bool has_embedding() const noexcept { return !coords_.empty(); }
  const std::vector<std::optional<Coord>>& embedding() const noexcept { return coords_; }
  std::optional<Coord> coord(Vertex v) const {
    return coords_.empty() ? std::nullopt : coords_[v];
  }

  /// All edges, ordered by tail and then by cyclic slot.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(heads_.size());
    for (std::size_t e = 0; e < heads_.size(); ++e) out.push_back({tails_[e], heads_[e]});
    return out;
  }

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.n_ == b.n_ && a.sink_ == b.sink_ && a.offsets_ == b.offsets_ &&
           a.heads_ == b.heads_ && a.coords_ == b.coords_;
  }

 private:
  std::size_t n_ = 0;
  std::optional<Vertex> sink_;
  std::vector<EdgeId> offsets_{0};
  std::vector<Vertex> heads_;
  std::vector<Vertex> tails_;
  std::vector<int> indegree_;
  std::vector<EdgeId> arc_offsets_{0};
  std::vector<Arc> arcs_;
  std::vector<std::optional<Coord>> coords_;
};

/// Same vertices and sink, with every out-edge list permuted: `orders[v]`
/// lists, for each new slot, the old slot of v that goes there.
inline Digraph with_out_order(const Digraph& g, const std::vector<std::vector<int>>& orders) {
  detail::require(orders.size() == g.vertex_count(), "one order per vertex required");
  std::vector<Edge> edges;
  for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
    detail::require(static_cast<int>(orders[v].size()) == g.out_degree(v),
                    "order length must equal out-degree");
    for (int old_slot : orders[v]) edges.push_back({v, g.out_heads(v)[old_slot]});
  }
  return Digraph::build(g.vertex_count(), edges, g.sink(), g.embedding());
}

/// Copy of g with every out-edge of v deleted and v designated as sink.
inline Digraph with_sink(const Digraph& g, Vertex v) {
  std::vector<Edge> edges;
  for (const auto& e : g.edges())
    if (e.tail != v) edges.push_back(e);
  return Digraph::build(g.vertex_count(), edges, v, g.embedding());
}

}  // namespace sandlab
