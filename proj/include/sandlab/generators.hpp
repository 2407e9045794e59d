#pragma once

// Graph families. Embedded families use row-major vertex indices
// (row i, column j) -> i*cols + j with x = j, y = i (y axis up), and list
// each vertex's out-edges clockwise starting from +x: east, south, west,
// north. A neighbor missing from a wired region is replaced, in the same
// slot, by an edge to the sink.

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sandlab/graph.hpp"

namespace sandlab::gen {

namespace detail {

constexpr std::array<std::pair<int, int>, 4> kClockwise{{{1, 0}, {0, -1}, {-1, 0}, {0, 1}}};

inline void require_positive(long k, const char* what) {
  sandlab::detail::require(k >= 1, std::string(what) + " must be at least 1");
}

}  // namespace detail

/// Complete digraph on k vertices, no self-loops, heads in ascending order.
inline Digraph complete(long k) {
  detail::require_positive(k, "complete graph size");
  std::vector<Edge> edges;
  for (Vertex v = 0; v < k; ++v)
    for (Vertex w = 0; w < k; ++w)
      if (v != w) edges.push_back({v, w});
  return Digraph::build(k, edges);
}

/// complete(k) with vertex k-1 turned into a sink. k = 3 gives the
/// two-vertex example whose sandpile group is cyclic of order 3.
inline Digraph complete_with_sink(long k) {
  return with_sink(complete(k), static_cast<Vertex>(k - 1));
}

/// Directed cycle 0 -> 1 -> ... -> k-1 -> 0.
inline Digraph directed_cycle(long k) {
  detail::require_positive(k, "cycle length");
  std::vector<Edge> edges;
  for (Vertex v = 0; v < k; ++v) edges.push_back({v, static_cast<Vertex>((v + 1) % k)});
  return Digraph::build(k, edges);
}

/// Bidirected version of an undirected multigraph; each vertex's out-edges
/// follow the order in which its incident edges are listed. When `sink` is
/// given its out-edges are deleted.
inline Digraph bidirected(long n, const std::vector<std::pair<Vertex, Vertex>>& undirected,
                          std::optional<Vertex> sink = std::nullopt) {
  std::vector<Edge> edges;
  for (auto [u, v] : undirected) {
    if (!sink || u != *sink) edges.push_back({u, v});
    if (u != v && (!sink || v != *sink)) edges.push_back({v, u});
  }
  return Digraph::build(n, edges, sink);
}

/// Path 0 - 1 - ... - (L-1), bidirected, with vertex L-1 as sink.
inline Digraph path_bidirected(long length) {
  detail::require_positive(length, "path length");
  std::vector<std::pair<Vertex, Vertex>> und;
  for (Vertex v = 0; v + 1 < length; ++v) und.push_back({v, v + 1});
  std::vector<std::optional<Coord>> emb;
  for (long v = 0; v < length; ++v) emb.push_back(Coord{v, 0});
  Digraph g = bidirected(length, und, static_cast<Vertex>(length - 1));
  return Digraph::build(length, g.edges(), g.sink(), emb);
}

/// Bidirected rows x cols grid without sink, clockwise order.
inline Digraph grid_bidirected(long rows, long cols) {
  detail::require_positive(rows, "grid rows");
  detail::require_positive(cols, "grid columns");
  std::vector<Edge> edges;
  std::vector<std::optional<Coord>> emb;
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) {
      emb.push_back(Coord{j, i});
      for (auto [dx, dy] : detail::kClockwise) {
        long ni = i + dy, nj = j + dx;
        if (ni >= 0 && ni < rows && nj >= 0 && nj < cols)
          edges.push_back({static_cast<Vertex>(i * cols + j), static_cast<Vertex>(ni * cols + nj)});
      }
    }
  return Digraph::build(rows * cols, edges, std::nullopt, emb);
}

/// L x L bidirected grid with wired boundary: every missing neighbor becomes
/// an edge to the sink (index L*L), so corners get two sink edges.
inline Digraph grid_wired(long size) {
  detail::require_positive(size, "grid size");
  const long n = size * size;
  const auto sink = static_cast<Vertex>(n);
  std::vector<Edge> edges;
  std::vector<std::optional<Coord>> emb;
  for (long i = 0; i < size; ++i)
    for (long j = 0; j < size; ++j) {
      emb.push_back(Coord{j, i});
      for (auto [dx, dy] : detail::kClockwise) {
        long ni = i + dy, nj = j + dx;
        bool inside = ni >= 0 && ni < size && nj >= 0 && nj < size;
        edges.push_back({static_cast<Vertex>(i * size + j),
                         inside ? static_cast<Vertex>(ni * size + nj) : sink});
      }
    }
  emb.push_back(std::nullopt);
  return Digraph::build(n + 1, edges, sink, emb);
}

/// L x L directed torus: (i,j) -> (i, j+1) and (i,j) -> (i+1, j), indices
/// mod L, with (0,0) made into the sink by deleting its out-edges.
inline Digraph directed_torus(long size) {
  detail::require_positive(size, "torus size");
  std::vector<Edge> edges;
  std::vector<std::optional<Coord>> emb;
  for (long i = 0; i < size; ++i)
    for (long j = 0; j < size; ++j) {
      emb.push_back(Coord{j, i});
      if (i == 0 && j == 0) continue;
      auto v = static_cast<Vertex>(i * size + j);
      edges.push_back({v, static_cast<Vertex>(i * size + (j + 1) % size)});
      edges.push_back({v, static_cast<Vertex>(((i + 1) % size) * size + j)});
    }
  return Digraph::build(size * size, edges, Vertex{0}, emb);
}

/// Lattice points with x^2 + y^2 < (d/2)^2, wired to a sink (last index)
/// with one sink edge per missing neighbor.
inline Digraph disk_wired(long diameter) {
  detail::require_positive(diameter, "disk diameter");
  auto inside = [&](long x, long y) { return 4 * (x * x + y * y) < diameter * diameter; };
  const long r = diameter / 2 + 1;
  std::map<std::pair<long, long>, Vertex> index;  // keyed (y, x): row-major
  std::vector<std::optional<Coord>> emb;
  for (long y = -r; y <= r; ++y)
    for (long x = -r; x <= r; ++x)
      if (inside(x, y)) {
        index[{y, x}] = static_cast<Vertex>(emb.size());
        emb.push_back(Coord{x, y});
      }
  const auto sink = static_cast<Vertex>(emb.size());
  std::vector<Edge> edges;
  for (const auto& [yx, v] : index)
    for (auto [dx, dy] : detail::kClockwise) {
      auto it = index.find({yx.first + dy, yx.second + dx});
      edges.push_back({v, it == index.end() ? sink : it->second});
    }
  emb.push_back(std::nullopt);
  return Digraph::build(emb.size(), edges, sink, emb);
}

/// Builds a family member from its CLI name, e.g. ("grid-wired", {128}).
inline Digraph generate(std::string_view family, const std::vector<long>& args) {
  auto arity = [&](std::size_t k) {
    sandlab::detail::require(args.size() == k, "family '" + std::string(family) + "' takes " +
                                                   std::to_string(k) + " argument(s)");
  };
  if (family == "grid-wired") return arity(1), grid_wired(args[0]);
  if (family == "grid") return arity(2), grid_bidirected(args[0], args[1]);
  if (family == "torus") return arity(1), directed_torus(args[0]);
  if (family == "disk-wired") return arity(1), disk_wired(args[0]);
  if (family == "complete") return arity(1), complete(args[0]);
  if (family == "complete-with-sink") return arity(1), complete_with_sink(args[0]);
  if (family == "cycle") return arity(1), directed_cycle(args[0]);
  if (family == "path") return arity(1), path_bidirected(args[0]);
  throw InvalidInput("unknown graph family '" + std::string(family) + "'");
}

}  // namespace sandlab::gen
