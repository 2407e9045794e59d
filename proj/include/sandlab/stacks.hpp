#pragma once

// Bi-infinite rotor stacks, kept in periodic form: rho_k(v) is
// base[(offset + k) mod L]. Popping moves the offset up by one, reverse
// popping moves it down. Walking from v pops the stack, then follows the
// new rho_0(v).

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sandlab/classify.hpp"
#include "sandlab/io.hpp"
#include "sandlab/rotor.hpp"

namespace sandlab {

struct VertexStack {
  std::vector<int> base;  ///< out-edge slots of the vertex; empty at sinks
  std::int64_t offset = 0;
  friend bool operator==(const VertexStack&, const VertexStack&) = default;
};

struct StackConfig {
  std::vector<VertexStack> stacks;
  friend bool operator==(const StackConfig&, const StackConfig&) = default;
};

struct StackWalk {
  StackConfig stacks;
  std::vector<Vertex> path;
};

struct AcyclicResult {
  StackConfig stacks;
  std::vector<std::vector<Vertex>> popped;
};

/// Chronological loop erasure: whenever the path revisits a vertex, the loop
/// since its earlier visit is removed.
inline std::vector<Vertex> loop_erase(const std::vector<Vertex>& path) {
  std::vector<Vertex> out;
  for (Vertex v : path) {
    auto it = std::find(out.begin(), out.end(), v);
    if (it != out.end()) out.erase(it + 1, out.end());
    else out.push_back(v);
  }
  return out;
}

class StackEngine {
 public:
  explicit StackEngine(const Digraph& g) : g_(&g) {}

  const Digraph& graph() const noexcept { return *g_; }

  /// Periodic stacks that reproduce the ordinary rotor router from r.
  StackConfig from_rotors(const RotorConfig& r) const {
    StackConfig s;
    s.stacks.resize(g_->vertex_count());
    for (Vertex v = 0; v < static_cast<Vertex>(g_->vertex_count()); ++v) {
      int d = g_->out_degree(v);
      if (d == 0) continue;
      for (int k = 0; k < d; ++k) s.stacks[v].base.push_back(k);
      s.stacks[v].offset = r.slots[v];
    }
    return s;
  }

  /// rho_0 as a rotor configuration.
  RotorConfig top(const StackConfig& s) const {
    RotorConfig r;
    r.slots.assign(g_->vertex_count(), -1);
    for (Vertex v = 0; v < static_cast<Vertex>(g_->vertex_count()); ++v)
      if (!s.stacks[v].base.empty()) r.slots[v] = element(s, v, 0);
    return r;
  }

  /// Slot of rho_k(v).
  int element(const StackConfig& s, Vertex v, std::int64_t k) const {
    const auto& st = s.stacks[v];
    auto len = static_cast<std::int64_t>(st.base.size());
    return st.base[static_cast<std::size_t>(((st.offset + k) % len + len) % len)];
  }

  Vertex top_target(const StackConfig& s, Vertex v) const {
    return g_->head(g_->out_edge(v, element(s, v, 0)));
  }

  void validate(const StackConfig& s) const {
    detail::require(s.stacks.size() == g_->vertex_count(), "stack configuration has the wrong length");
    for (Vertex v = 0; v < static_cast<Vertex>(g_->vertex_count()); ++v) {
      const int d = g_->out_degree(v);
      const auto& base = s.stacks[v].base;
      if (d == 0) {
        detail::require(base.empty(), "sink vertex " + std::to_string(v) + " cannot have a stack");
        continue;
      }
      std::vector<char> seen(d, 0);
      for (int e : base) {
        detail::require(e >= 0 && e < d, "stack entry out of range at vertex " + std::to_string(v));
        seen[e] = 1;
      }
      for (int k = 0; k < d; ++k)
        detail::require(seen[k], "stack at vertex " + std::to_string(v) + " misses out-edge " +
                                     std::to_string(k) + " (not infinitive)");
    }
  }

  StackConfig pop(StackConfig s, Vertex v) const {
    require_stack(s, v);
    ++s.stacks[v].offset;
    return s;
  }

  StackConfig reverse_pop(StackConfig s, Vertex v) const {
    require_stack(s, v);
    --s.stacks[v].offset;
    return s;
  }

  /// True when `cycle` (in order) is a directed cycle of rho_0.
  bool is_top_cycle(const StackConfig& s, const std::vector<Vertex>& cycle) const {
    if (cycle.empty()) return false;
    std::vector<char> seen(g_->vertex_count(), 0);
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      Vertex v = cycle[i];
      if (v < 0 || v >= static_cast<Vertex>(g_->vertex_count()) || s.stacks[v].base.empty() || seen[v])
        return false;
      seen[v] = 1;
      if (top_target(s, v) != cycle[(i + 1) % cycle.size()]) return false;
    }
    return true;
  }

  /// Reverse pops every stack on the cycle; no-op if it is not a rho_0 cycle.
  StackConfig cycle_pop(StackConfig s, const std::vector<Vertex>& cycle) const {
    if (!is_top_cycle(s, cycle)) return s;
    for (Vertex v : cycle) --s.stacks[v].offset;
    return s;
  }

  /// Some rho_0 cycle, found by following rho_0 from the lowest-indexed
  /// vertex not yet known to lead to a sink. Empty if rho_0 is acyclic.
  std::vector<Vertex> find_cycle(const StackConfig& s) const {
    return find_cycle_from(s, ascending());
  }

  /// Pops cycles until rho_0 is acyclic.
  AcyclicResult pop_to_acyclic(StackConfig s) const { return pop_to_acyclic_impl(std::move(s), nullptr); }

  /// Same, picking the start vertex of each cycle search at random.
  AcyclicResult pop_to_acyclic_random(StackConfig s, std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    return pop_to_acyclic_impl(std::move(s), &rng);
  }

  /// E_v on stacks: route one chip from v to the sink.
  StackWalk chip_add(StackConfig s, Vertex v) const {
    require_global_sink();
    validate(s);
    require_stack(s, v);
    StackWalk w{std::move(s), {v}};
    const std::uint64_t cap = walk_cap(w.stacks);
    for (std::uint64_t k = 0; g_->out_degree(v) > 0; ++k) {
      if (k >= cap) throw InternalError("stack walk exceeded its step cap");
      ++w.stacks.stacks[v].offset;
      v = top_target(w.stacks, v);
      w.path.push_back(v);
    }
    return w;
  }

  /// The acyclic configuration r' with E_v r' = s, for s with acyclic rho_0.
  StackConfig chip_add_inverse(StackConfig s, Vertex v) const {
    require_global_sink();
    validate(s);
    require_stack(s, v);
    detail::require(find_cycle(s).empty(), "inverse chip addition requires acyclic rho_0");
    std::vector<Vertex> path;
    for (Vertex u = v; g_->out_degree(u) > 0; u = top_target(s, u)) path.push_back(u);
    for (Vertex u : path) --s.stacks[u].offset;
    return pop_to_acyclic(std::move(s)).stacks;
  }

  /// Path from v to the sink along rho_0 (requires acyclic rho_0 near v).
  std::vector<Vertex> top_path(const StackConfig& s, Vertex v) const {
    std::vector<Vertex> path{v};
    for (std::size_t k = 0; g_->out_degree(v) > 0; ++k) {
      detail::require(k < g_->vertex_count(), "rho_0 path from the vertex is cyclic");
      v = top_target(s, v);
      path.push_back(v);
    }
    return path;
  }

 private:
  void require_stack(const StackConfig& s, Vertex v) const {
    detail::require(v >= 0 && v < static_cast<Vertex>(g_->vertex_count()), "vertex out of range");
    detail::require(s.stacks.size() == g_->vertex_count() && !s.stacks[v].base.empty(),
                    "vertex " + std::to_string(v) + " has no stack (sink)");
  }

  void require_global_sink() const {
    auto info = classify(*g_);
    detail::require(info.has_global_sink, "stack walks require a global sink");
  }

  std::vector<Vertex> ascending() const {
    std::vector<Vertex> order(g_->vertex_count());
    for (Vertex v = 0; v < static_cast<Vertex>(order.size()); ++v) order[v] = v;
    return order;
  }

  std::vector<Vertex> find_cycle_from(const StackConfig& s, const std::vector<Vertex>& order) const {
    const auto n = static_cast<Vertex>(g_->vertex_count());
    // 0 = unseen, 1 = on current path, 2 = leads to a sink
    std::vector<char> color(n, 0);
    for (Vertex start : order) {
      if (color[start]) continue;
      std::vector<Vertex> path;
      Vertex v = start;
      while (!color[v] && g_->out_degree(v) > 0) {
        color[v] = 1;
        path.push_back(v);
        v = top_target(s, v);
      }
      if (color[v] == 1) {
        auto it = std::find(path.begin(), path.end(), v);
        return {it, path.end()};
      }
      for (Vertex p : path) color[p] = 2;
    }
    return {};
  }

  // The walk visits every vertex a bounded number of times per stack
  // period; this generous bound only guards against broken invariants.
  std::uint64_t walk_cap(const StackConfig& s) const {
    std::uint64_t total = 1;
    for (const auto& st : s.stacks) total += st.base.size();
    std::uint64_t n = g_->vertex_count() + 1;
    std::uint64_t cap = total;
    for (std::uint64_t k = 0; k < n && cap < (1ull << 40); ++k) cap *= 2;
    return cap;
  }

  AcyclicResult pop_to_acyclic_impl(StackConfig s, std::mt19937_64* rng) const {
    require_global_sink();
    validate(s);
    AcyclicResult res;
    std::vector<Vertex> order = ascending();
    const std::uint64_t cap = walk_cap(s) * (g_->vertex_count() + 1);
    for (std::uint64_t k = 0;; ++k) {
      if (k > cap) throw InternalError("cycle popping did not terminate");
      if (rng) std::shuffle(order.begin(), order.end(), *rng);
      auto cycle = find_cycle_from(s, order);
      if (cycle.empty()) break;
      for (Vertex v : cycle) --s.stacks[v].offset;
      res.popped.push_back(std::move(cycle));
    }
    res.stacks = std::move(s);
    return res;
  }

  const Digraph* g_;
};

namespace io {

/// `stacks v1`, then `stack <v> <offset> <e_1> ... <e_L>` per vertex with
/// out-edges, entries being out-edge slots.
inline std::string serialize_stacks(const StackConfig& s) {
  std::ostringstream os;
  os << "stacks v1\n";
  for (std::size_t v = 0; v < s.stacks.size(); ++v) {
    if (s.stacks[v].base.empty()) continue;
    os << "stack " << v << ' ' << s.stacks[v].offset;
    for (int e : s.stacks[v].base) os << ' ' << e;
    os << '\n';
  }
  return os.str();
}

inline StackConfig parse_stacks(const Document& doc, const Digraph& g) {
  expect_kind(doc, "stacks");
  StackConfig s;
  s.stacks.resize(g.vertex_count());
  std::vector<char> seen(g.vertex_count(), 0);
  for (const auto& l : doc.lines) {
    if (l[0].text != "stack") throw ParseError(l[0].line, "unknown keyword '" + l[0].text + "'");
    if (l.size() < 4) throw ParseError(l[0].line, "stack line needs a vertex, an offset and entries");
    auto v = to_int(l[1]);
    if (v < 0 || v >= static_cast<std::int64_t>(g.vertex_count()))
      throw ParseError(l[1].line, "vertex index out of range");
    if (g.out_degree(static_cast<Vertex>(v)) == 0) throw ParseError(l[1].line, "sink vertex has no stack");
    if (seen[v]) throw ParseError(l[0].line, "duplicate stack for vertex " + l[1].text);
    seen[v] = 1;
    s.stacks[v].offset = to_int(l[2]);
    for (std::size_t i = 3; i < l.size(); ++i) {
      auto e = to_int(l[i]);
      if (e < 0 || e >= g.out_degree(static_cast<Vertex>(v)))
        throw ParseError(l[i].line, "out-edge index out of range");
      s.stacks[v].base.push_back(static_cast<int>(e));
    }
  }
  for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v)
    if (g.out_degree(v) > 0 && !seen[v]) throw ParseError(doc.header_line, "missing stack for vertex " + std::to_string(v));
  StackEngine(g).validate(s);
  return s;
}

}  // namespace io
}  // namespace sandlab
