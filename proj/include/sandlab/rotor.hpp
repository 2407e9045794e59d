#pragma once

// Rotor-router walks. A rotor stores the out-edge a vertex used LAST: to
// route a chip from v, first advance rho(v) to its successor in the cyclic
// order, then move the chip along the new rho(v). Every operation below
// follows this advance-then-move rule; getting it backwards silently breaks
// the tree bijections.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <deque>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sandlab/classify.hpp"
#include "sandlab/io.hpp"
#include "sandlab/sandpile.hpp"

namespace sandlab {

/// One rotor per vertex, stored as the slot of rho(v) in v's cyclic order.
/// Vertices without out-edges carry slot -1.
struct RotorConfig {
  std::vector<int> slots;
  friend auto operator<=>(const RotorConfig&, const RotorConfig&) = default;
};

/// A chip at `chip` together with a rotor configuration.
struct SingleChipState {
  Vertex chip = 0;
  RotorConfig rotors;
  friend auto operator<=>(const SingleChipState&, const SingleChipState&) = default;
};

/// The unique rotor cycle of a unicycle, listed from the chip vertex in the
/// direction of the rotors. Empty when the state is not a unicycle.
struct UnicycleCertificate {
  std::vector<Vertex> cycle;
  explicit operator bool() const noexcept { return !cycle.empty(); }
};

struct RotorOrbit {
  std::vector<SingleChipState> states;  ///< states[0] is the start
  std::vector<EdgeId> edges;            ///< edge traversed by each step
};

/// Result of a single-chip walk to the sink.
struct RotorWalk {
  RotorConfig rotors;
  std::vector<Vertex> path;  ///< starts at the chip vertex, ends at the sink
};

struct HittingBound {
  Rational walk_count;      ///< H_rho(sigma, Y), chips of the rotor walk stopping in Y
  Rational expected_count;  ///< H(sigma, Y) for independent random walks
  Rational lhs;             ///< walk_count - expected_count
  Rational rhs;             ///< sum over edges of |h(head) - h(tail)|
  std::vector<Rational> h;  ///< h(v) = probability a walk from v stops in Y
  bool ok = false;
};

struct CycleReversalReport {
  std::vector<Vertex> cycle;
  std::uint64_t steps = 0;
  bool reached = false;
  bool interior_full_turn = false;
  bool exterior_unmoved = false;
  bool cycle_reversed = false;
  std::vector<Vertex> interior;
  bool ok() const { return reached && interior_full_turn && exterior_unmoved && cycle_reversed; }
};

class RotorRouter {
 public:
  explicit RotorRouter(const Digraph& g) : g_(&g), pile_(g) {}

  const Digraph& graph() const noexcept { return *g_; }
  const Sandpile& sandpile() const noexcept { return pile_; }

  /// Every rotor at slot `slot` (0 by default) of its vertex.
  RotorConfig uniform(int slot = 0) const {
    RotorConfig r;
    r.slots.resize(g_->vertex_count());
    for (Vertex v = 0; v < static_cast<Vertex>(r.slots.size()); ++v) {
      int d = g_->out_degree(v);
      r.slots[v] = d == 0 ? -1 : slot % d;
    }
    return r;
  }

  void validate(const RotorConfig& r) const {
    detail::require(r.slots.size() == g_->vertex_count(), "rotor configuration has the wrong length");
    for (Vertex v = 0; v < static_cast<Vertex>(r.slots.size()); ++v) {
      int d = g_->out_degree(v);
      detail::require(d == 0 ? r.slots[v] == -1 : (r.slots[v] >= 0 && r.slots[v] < d),
                      "rotor slot out of range at vertex " + std::to_string(v));
    }
  }

  EdgeId rotor_edge(const RotorConfig& r, Vertex v) const { return g_->out_edge(v, r.slots[v]); }
  Vertex rotor_target(const RotorConfig& r, Vertex v) const { return g_->head(rotor_edge(r, v)); }

  /// Advance rho(v), then report the edge the chip leaves along.
  EdgeId advance(RotorConfig& r, Vertex v) const {
    int d = g_->out_degree(v);
    r.slots[v] = (r.slots[v] + 1) % d;
    return g_->out_edge(v, r.slots[v]);
  }

  // Sink-free dynamics.

  SingleChipState step(SingleChipState s) const {
    detail::require(g_->out_degree(s.chip) > 0, "chip is at a sink (absorbing state)");
    s.chip = g_->head(advance(s.rotors, s.chip));
    return s;
  }

  /// Unicycle test: the rotor edges contain exactly one directed cycle and
  /// the chip lies on it.
  UnicycleCertificate unicycle(const SingleChipState& s) const {
    validate(s.rotors);
    const auto n = static_cast<Vertex>(g_->vertex_count());
    for (Vertex v = 0; v < n; ++v)
      if (g_->out_degree(v) == 0) return {};
    // 0 = unseen, 1 = on current path, 2 = done
    std::vector<char> color(n, 0);
    int cycles = 0;
    for (Vertex start = 0; start < n; ++start) {
      if (color[start]) continue;
      std::vector<Vertex> path;
      Vertex v = start;
      while (!color[v]) {
        color[v] = 1;
        path.push_back(v);
        v = rotor_target(s.rotors, v);
      }
      if (color[v] == 1) ++cycles;
      for (Vertex p : path) color[p] = 2;
    }
    if (cycles != 1) return {};
    UnicycleCertificate cert;
    Vertex v = s.chip;
    for (std::size_t k = 0; k <= g_->vertex_count(); ++k) {
      cert.cycle.push_back(v);
      v = rotor_target(s.rotors, v);
      if (v == s.chip) return cert;
    }
    return {};
  }

  /// Inverse of step on unicycles: move the chip back to its predecessor on
  /// the cycle and retract that vertex's rotor.
  SingleChipState step_inverse(SingleChipState s) const {
    auto cert = unicycle(s);
    detail::require(static_cast<bool>(cert), "step_inverse requires a unicycle");
    Vertex pred = cert.cycle.back();
    int d = g_->out_degree(pred);
    s.rotors.slots[pred] = (s.rotors.slots[pred] + d - 1) % d;
    s.chip = pred;
    return s;
  }

  /// Iterates step until the start state recurs. Gives up after
  /// 4 |E| |V| steps.
  RotorOrbit orbit(const SingleChipState& start) const {
    validate(start.rotors);
    const std::uint64_t cap = 4ull * g_->edge_count() * g_->vertex_count();
    RotorOrbit o;
    SingleChipState s = start;
    for (std::uint64_t k = 0; k < cap; ++k) {
      o.states.push_back(s);
      Vertex from = s.chip;
      s = step(std::move(s));
      o.edges.push_back(rotor_edge(s.rotors, from));
      if (s == start) return o;
    }
    throw InvalidInput("state did not recur within " + std::to_string(cap) + " steps");
  }

  // Dynamics with a global sink.

  bool is_acyclic(const RotorConfig& r) const {
    validate(r);
    const auto n = static_cast<Vertex>(g_->vertex_count());
    std::vector<char> color(n, 0);
    for (Vertex start = 0; start < n; ++start) {
      std::vector<Vertex> path;
      Vertex v = start;
      while (!color[v] && g_->out_degree(v) > 0) {
        color[v] = 1;
        path.push_back(v);
        v = rotor_target(r, v);
      }
      if (color[v] == 1) return false;
      for (Vertex p : path) color[p] = 2;
      color[v] = 2;
    }
    return true;
  }

  /// E_v: route one chip from v until it reaches the sink.
  RotorWalk chip_add(RotorConfig r, Vertex v) const {
    pile_.require_global_sink();
    validate(r);
    detail::require(g_->out_degree(v) > 0, "cannot add a chip at the sink");
    RotorWalk walk{std::move(r), {v}};
    while (g_->out_degree(v) > 0) {
      v = g_->head(advance(walk.rotors, v));
      walk.path.push_back(v);
    }
    return walk;
  }

  /// sigma(rho): add sigma(v) chips at each v and route all of them to the
  /// sink. Chips are moved in bulk; by the abelian property the order does
  /// not matter.
  RotorConfig act(const ChipConfig& sigma, RotorConfig r) const {
    pile_.require_global_sink();
    pile_.validate(sigma);
    validate(r);
    std::vector<Count> chips = sigma.chips;
    route_all(chips, r, [](Vertex) { return false; });
    return r;
  }

  /// The unique recurrent sigma with sigma(from) = to, for acyclic from/to.
  ChipConfig tree_action_solve(const RotorConfig& from, const RotorConfig& to) const {
    pile_.require_global_sink();
    detail::require(is_acyclic(from) && is_acyclic(to), "tree_action_solve requires acyclic rotors");
    ChipConfig alpha = pile_.zero();
    ChipConfig beta = pile_.zero();
    for (Vertex v = 0; v < static_cast<Vertex>(g_->vertex_count()); ++v) {
      int d = g_->out_degree(v);
      if (d == 0) continue;
      // edges e with from(v) < e <= to(v) in cyclic order
      int a = ((to.slots[v] - from.slots[v]) % d + d) % d;
      alpha[v] = a;
      for (int k = 1; k <= a; ++k) {
        Vertex w = g_->out_heads(v)[(from.slots[v] + k) % d];
        if (g_->out_degree(w) > 0) ++beta[w];
      }
    }
    ChipConfig gamma = pile_.inverse(pile_.stabilized(pile_.plus(beta, pile_.identity())));
    ChipConfig sum = pile_.plus(alpha, gamma);
    return pile_.recurrent_representative(SignedConfig{sum.chips});
  }

  /// Eulerian tour traced by |E| steps from a unicycle with the chip at
  /// tail(e) and rho(tail(e)) = e-. The tour starts with e.
  std::vector<EdgeId> eulerian_tour(const SingleChipState& u, EdgeId e) const {
    detail::require(classify(*g_).eulerian, "eulerian_tour requires an Eulerian digraph");
    const Vertex w = g_->tail(e);
    const int d = g_->out_degree(w);
    detail::require(u.chip == w, "chip must sit at the tail of the starting edge");
    detail::require(u.rotors.slots[w] == (g_->slot_of(e) + d - 1) % d,
                    "rotor at the tail must point to the edge preceding the starting edge");
    detail::require(static_cast<bool>(unicycle(u)), "eulerian_tour requires a unicycle");
    std::vector<EdgeId> tour;
    SingleChipState s = u;
    for (std::size_t k = 0; k < g_->edge_count(); ++k) {
      Vertex from = s.chip;
      s = step(std::move(s));
      tour.push_back(rotor_edge(s.rotors, from));
    }
    return tour;
  }

  /// Compares rotor-router hitting counts with exact random-walk hitting
  /// probabilities. Walks stop on first reaching Z; Y is a subset of Z.
  HittingBound hitting_bound_check(const std::vector<Vertex>& y, const std::vector<Vertex>& z,
                                   const ChipConfig& sigma, RotorConfig r) const {
    const auto n = static_cast<Vertex>(g_->vertex_count());
    validate(r);
    detail::require(sigma.size() == g_->vertex_count(), "configuration has the wrong length");
    std::vector<char> in_z(n, 0), in_y(n, 0);
    for (Vertex v : z) {
      detail::require(v >= 0 && v < n, "vertex out of range");
      in_z[v] = 1;
    }
    for (Vertex v : y) {
      detail::require(v >= 0 && v < n && in_z[v], "Y must be a subset of Z");
      in_y[v] = 1;
    }
    for (Vertex v = 0; v < n; ++v)
      detail::require(in_z[v] || g_->out_degree(v) > 0, "every vertex without out-edges must belong to Z");
    {
      // every vertex must reach Z
      std::vector<std::vector<Vertex>> rev(n);
      for (Vertex v = 0; v < n; ++v)
        for (const auto& a : g_->arcs(v)) rev[a.head].push_back(v);
      std::vector<char> seen(in_z);
      std::vector<Vertex> todo;
      for (Vertex v = 0; v < n; ++v)
        if (in_z[v]) todo.push_back(v);
      while (!todo.empty()) {
        Vertex v = todo.back();
        todo.pop_back();
        for (Vertex u : rev[v])
          if (!seen[u]) seen[u] = 1, todo.push_back(u);
      }
      detail::require(std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; }), "Z is not reachable from every vertex");
    }

    HittingBound hb;
    hb.h.assign(n, Rational(0));
    std::vector<Vertex> free;
    std::vector<int> idx(n, -1);
    for (Vertex v = 0; v < n; ++v) {
      if (in_y[v]) hb.h[v] = 1;
      if (!in_z[v]) idx[v] = static_cast<int>(free.size()), free.push_back(v);
    }
    if (!free.empty()) {
      IntegerMatrix m(free.size(), free);
      std::vector<Rational> rhs(free.size(), Rational(0));
      for (Vertex v : free) {
        m(idx[v], idx[v]) += g_->out_degree(v);
        for (const auto& a : g_->arcs(v)) {
          if (in_z[a.head]) {
            if (in_y[a.head]) rhs[idx[v]] += Rational(static_cast<long>(a.count));
          } else {
            m(idx[v], idx[a.head]) -= a.count;
          }
        }
      }
      auto sol = solve_rational(m, rhs);
      for (Vertex v : free) hb.h[v] = sol[idx[v]];
    }

    hb.expected_count = 0;
    for (Vertex v = 0; v < n; ++v) hb.expected_count += Rational(static_cast<long>(sigma[v])) * hb.h[v];

    std::vector<Count> chips = sigma.chips;
    Count stopped_in_y = 0;
    route_all(chips, r, [&](Vertex v) { return in_z[v] != 0; });
    for (Vertex v = 0; v < n; ++v)
      if (in_y[v]) stopped_in_y += chips[v];
    hb.walk_count = Rational(static_cast<long>(stopped_in_y));

    hb.rhs = 0;
    for (EdgeId e = 0; e < static_cast<EdgeId>(g_->edge_count()); ++e)
      hb.rhs += abs(hb.h[g_->head(e)] - hb.h[g_->tail(e)]);
    hb.lhs = hb.walk_count - hb.expected_count;
    hb.ok = abs(hb.lhs) <= hb.rhs;
    return hb;
  }

  /// Runs a clockwise unicycle on an embedded bidirected planar graph with
  /// clockwise rotor order until the chip is back with the cycle reversed,
  /// then checks interior rotors turned fully and exterior ones not at all.
  CycleReversalReport cycle_reversal_check(const SingleChipState& u) const {
    const auto n = static_cast<Vertex>(g_->vertex_count());
    detail::require(g_->has_embedding(), "cycle reversal needs an embedding");
    for (Vertex v = 0; v < n; ++v) detail::require(g_->coord(v).has_value(), "every vertex needs coordinates");
    auto info = classify(*g_);
    detail::require(info.bidirected && info.strongly_connected, "graph must be bidirected and connected");
    detail::require(out_order_clockwise(), "out-edges must be ordered clockwise");
    auto cert = unicycle(u);
    detail::require(static_cast<bool>(cert), "initial state must be a unicycle");

    CycleReversalReport rep;
    rep.cycle = cert.cycle;
    // Shoelace, y up: clockwise cycles have negative signed area.
    std::int64_t twice_area = 0;
    for (std::size_t i = 0; i < rep.cycle.size(); ++i) {
      Coord a = *g_->coord(rep.cycle[i]);
      Coord b = *g_->coord(rep.cycle[(i + 1) % rep.cycle.size()]);
      twice_area += a.x * b.y - b.x * a.y;
    }
    detail::require(twice_area <= 0, "initial cycle must be oriented clockwise");

    std::vector<char> on_cycle(n, 0), inside(n, 0);
    for (Vertex v : rep.cycle) on_cycle[v] = 1;
    for (Vertex v = 0; v < n; ++v)
      if (!on_cycle[v] && point_in_cycle(*g_->coord(v), rep.cycle)) {
        inside[v] = 1;
        rep.interior.push_back(v);
      }

    auto reversed = [&](const SingleChipState& s) {
      if (s.chip != u.chip) return false;
      const std::size_t len = rep.cycle.size();
      for (std::size_t i = 0; i < len; ++i) {
        Vertex a = rep.cycle[i], b = rep.cycle[(i + 1) % len];
        if (rotor_target(s.rotors, b) != a) return false;
      }
      return true;
    };

    std::vector<std::uint64_t> advanced(n, 0);
    const std::uint64_t cap = 4ull * g_->edge_count() * g_->vertex_count();
    SingleChipState s = u;
    while (rep.steps < cap) {
      ++advanced[s.chip];
      s = step(std::move(s));
      ++rep.steps;
      if (reversed(s)) {
        rep.reached = true;
        break;
      }
    }
    if (!rep.reached) return rep;
    rep.interior_full_turn = rep.exterior_unmoved = rep.cycle_reversed = true;
    for (Vertex v = 0; v < n; ++v) {
      auto d = static_cast<std::uint64_t>(g_->out_degree(v));
      if (inside[v]) rep.interior_full_turn &= advanced[v] == d;
      else if (!on_cycle[v]) rep.exterior_unmoved &= advanced[v] == 0;
      else rep.cycle_reversed &= advanced[v] <= d;
    }
    return rep;
  }

  /// Out-edges of every embedded vertex appear in clockwise angular order.
  bool out_order_clockwise() const {
    for (Vertex v = 0; v < static_cast<Vertex>(g_->vertex_count()); ++v) {
      auto c = g_->coord(v);
      auto heads = g_->out_heads(v);
      if (!c || heads.size() < 3) continue;
      std::vector<double> angle;
      for (Vertex w : heads) {
        auto cw = g_->coord(w);
        if (!cw) return false;
        angle.push_back(std::atan2(static_cast<double>(cw->y - c->y), static_cast<double>(cw->x - c->x)));
      }
      int rises = 0;
      for (std::size_t i = 0; i < angle.size(); ++i)
        if (angle[(i + 1) % angle.size()] >= angle[i]) ++rises;
      if (rises > 1) return false;
    }
    return true;
  }

  /// Bulk routing: every chip on a vertex outside `stop` moves until it sits
  /// on a stop vertex or a vertex without out-edges.
  template <typename Stop>
  void route_all(std::vector<Count>& chips, RotorConfig& r, Stop&& stop) const {
    const auto n = static_cast<Vertex>(g_->vertex_count());
    auto movable = [&](Vertex v) { return chips[v] > 0 && g_->out_degree(v) > 0 && !stop(v); };
    std::deque<Vertex> queue;
    std::vector<char> queued(n, 0);
    for (Vertex v = 0; v < n; ++v)
      if (movable(v)) queue.push_back(v), queued[v] = 1;
    while (!queue.empty()) {
      Vertex v = queue.front();
      queue.pop_front();
      queued[v] = 0;
      const int d = g_->out_degree(v);
      const Count c = chips[v];
      if (c == 0) continue;
      chips[v] = 0;
      const Count full = c / d;
      const int rest = static_cast<int>(c % d);
      auto heads = g_->out_heads(v);
      for (int k = 1; k <= d; ++k) {
        int slot = (r.slots[v] + k) % d;
        Count amount = full + (k <= rest ? 1 : 0);
        if (amount == 0) continue;
        Vertex w = heads[slot];
        chips[w] = detail::checked_add(chips[w], amount);
        if (!queued[w] && movable(w)) queue.push_back(w), queued[w] = 1;
      }
      r.slots[v] = (r.slots[v] + rest) % d;
    }
  }

 private:
  // Even-odd crossing test; points exactly on the polygon count as outside.
  bool point_in_cycle(Coord p, const std::vector<Vertex>& cycle) const {
    bool in = false;
    const std::size_t len = cycle.size();
    for (std::size_t i = 0, j = len - 1; i < len; j = i++) {
      Coord a = *g_->coord(cycle[i]), b = *g_->coord(cycle[j]);
      if ((a.y > p.y) != (b.y > p.y)) {
        // x-coordinate of the crossing compared without division
        std::int64_t lhs = (p.x - a.x) * (b.y - a.y);
        std::int64_t rhs = (b.x - a.x) * (p.y - a.y);
        if ((b.y - a.y) > 0 ? lhs < rhs : lhs > rhs) in = !in;
      }
    }
    return in;
  }

  const Digraph* g_;
  Sandpile pile_;
};

/// Bijection between recurrent configurations and spanning trees rooted at
/// the sink, anchored at a base tree that corresponds to the identity.
class TreeBijection {
 public:
  TreeBijection(const RotorRouter& router, RotorConfig base) : router_(&router), base_(std::move(base)) {
    detail::require(router.is_acyclic(base_), "base rotor configuration must be acyclic");
  }
  const RotorConfig& base() const noexcept { return base_; }
  RotorConfig tree_of(const ChipConfig& recurrent) const { return router_->act(recurrent, base_); }
  ChipConfig config_of(const RotorConfig& tree) const { return router_->tree_action_solve(base_, tree); }

 private:
  const RotorRouter* router_;
  RotorConfig base_;
};

/// Final positions (sorted) and rotors after routing distinguishable chips.
struct FixedStepOutcome {
  std::vector<Vertex> positions;
  RotorConfig rotors;
  friend bool operator==(const FixedStepOutcome&, const FixedStepOutcome&) = default;
};

/// Routes the chips one after another in the given order, each for at most
/// `steps` steps (or until absorbed when steps < 0). Absorbed chips report
/// the sink as position.
inline FixedStepOutcome route_in_order(const RotorRouter& router, RotorConfig r,
                                       const std::vector<Vertex>& chips, int steps) {
  const Digraph& g = router.graph();
  FixedStepOutcome out;
  for (Vertex v : chips) {
    for (int k = 0; (steps < 0 || k < steps) && g.out_degree(v) > 0; ++k) v = g.head(router.advance(r, v));
    out.positions.push_back(v);
  }
  std::sort(out.positions.begin(), out.positions.end());
  out.rotors = std::move(r);
  return out;
}

struct NoncommutativityReport {
  Digraph graph;
  RotorConfig start;
  std::vector<Vertex> chips;  ///< starting vertices of the two chips
  int steps = 2;
  FixedStepOutcome first_then_second;
  FixedStepOutcome second_then_first;
  bool differ() const { return !(first_then_second == second_then_first); }
};

/// Two chips routed for two steps each on a small graph with sink; the two
/// orders end in different states.
///
///   0 -> 1, 1 -> {2, 3}, 2 -> 3, 3 sink; chips at 0 and 1; rotors at slot 0.
///
/// Chip 0 first: it reaches 1, flips the rotor there to 3 and is absorbed;
/// chip 1 then goes 1 -> 2 -> 3. Chip 1 first: it goes straight to 3, and
/// chip 0 then ends its two steps at 2.
inline NoncommutativityReport noncommutativity_demo(int chips_count = 2) {
  NoncommutativityReport rep;
  rep.graph = Digraph::build(4, {{0, 1}, {1, 2}, {1, 3}, {2, 3}}, Vertex{3});
  RotorRouter router(rep.graph);
  rep.start = router.uniform(0);
  std::vector<Vertex> chips{0, 1};
  chips.resize(static_cast<std::size_t>(std::clamp(chips_count, 0, 2)));
  rep.chips = chips;
  std::vector<Vertex> reversed(chips.rbegin(), chips.rend());
  rep.first_then_second = route_in_order(router, rep.start, chips, rep.steps);
  rep.second_then_first = route_in_order(router, rep.start, reversed, rep.steps);
  return rep;
}

namespace io {

/// `rotors v1` followed by the slot of rho(v) for every vertex with
/// out-edges, ascending.
inline std::string serialize_rotors(const RotorConfig& r) {
  std::ostringstream os;
  os << "rotors v1\n";
  std::size_t k = 0;
  for (int s : r.slots)
    if (s >= 0) os << (k == 0 ? "" : k % 32 == 0 ? "\n" : " ") << s, ++k;
  os << '\n';
  return os.str();
}

inline RotorConfig parse_rotors(const Document& doc, const Digraph& g) {
  expect_kind(doc, "rotors");
  auto tokens = doc.flat();
  RotorConfig r;
  r.slots.assign(g.vertex_count(), -1);
  std::size_t k = 0;
  for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
    if (g.out_degree(v) == 0) continue;
    if (k >= tokens.size()) throw ParseError(doc.header_line, "too few rotor entries");
    auto s = to_int(tokens[k]);
    if (s < 0 || s >= g.out_degree(v))
      throw ParseError(tokens[k].line, "rotor index out of range for vertex " + std::to_string(v));
    r.slots[v] = static_cast<int>(s);
    ++k;
  }
  if (k != tokens.size()) throw ParseError(doc.header_line, "too many rotor entries");
  return r;
}

}  // namespace io
}  // namespace sandlab
