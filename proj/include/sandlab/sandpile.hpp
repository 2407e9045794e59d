#pragma once

// Abelian sandpile (chip-firing) on a digraph: stabilization, chip addition,
// the sandpile group of recurrent configurations, recurrence tests, and
// cluster-firing / superstabilization.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sandlab/algebra.hpp"
#include "sandlab/classify.hpp"
#include "sandlab/graph.hpp"
#include "sandlab/io.hpp"

namespace sandlab {

/// Nonnegative chip counts indexed by vertex; the sink entry stays 0.
struct ChipConfig {
  std::vector<Count> chips;

  ChipConfig() = default;
  explicit ChipConfig(std::size_t n, Count fill = 0) : chips(n, fill) {}
  explicit ChipConfig(std::vector<Count> c) : chips(std::move(c)) {}

  std::size_t size() const noexcept { return chips.size(); }
  Count& operator[](Vertex v) { return chips[v]; }
  Count operator[](Vertex v) const { return chips[v]; }

  Count total() const {
    Count t = 0;
    for (Count c : chips) t = detail::checked_add(t, c);
    return t;
  }

  friend auto operator<=>(const ChipConfig&, const ChipConfig&) = default;
};

/// Integer vector over the vertices that may go negative; used for
/// arithmetic on equivalence classes modulo the reduced Laplacian.
struct SignedConfig {
  std::vector<Count> values;
  friend bool operator==(const SignedConfig&, const SignedConfig&) = default;
};

/// Firing counts of one stabilization.
struct Odometer {
  std::vector<Count> fires;
  /// Sum of fires(v) * outdeg(v): the number of single-chip moves.
  Count total_chip_moves = 0;
  friend bool operator==(const Odometer&, const Odometer&) = default;
};

enum class FiringPolicy {
  Bulk,    ///< stack of active vertices, fire floor(chips/outdeg) times per visit
  Fifo,    ///< FIFO queue, one firing per visit
  Lifo,    ///< stack of active vertices, one firing per visit
  Random,  ///< uniformly random active vertex, one firing per step
};

struct StabilizeOptions {
  FiringPolicy policy = FiringPolicy::Bulk;
  /// Maximum number of single firings. Required when there is no global sink.
  std::optional<std::uint64_t> step_cap;
  std::uint64_t seed = 0x5eed;
};

struct Stabilization {
  ChipConfig config;
  Odometer odometer;
};

enum class RecurrenceTest { Epsilon, Burning, Peeling };

struct MoveBound {
  Count moves = 0;
  Rational bound;
  bool ok = false;
};

/// Chip-firing engine bound to one digraph. The graph must outlive it.
class Sandpile {
 public:
  explicit Sandpile(const Digraph& g) : g_(&g), info_(classify(g)) {
    const auto n = static_cast<Vertex>(g.vertex_count());
    degree_.resize(n);
    loops_.assign(n, 0);
    nb_offsets_.assign(n + 1, 0);
    for (Vertex v = 0; v < n; ++v) {
      degree_[v] = g.out_degree(v);
      for (const auto& a : g.arcs(v)) {
        if (a.head == v) {
          loops_[v] = a.count;
        } else if (!(g.sink() && a.head == *g.sink())) {
          nb_head_.push_back(a.head);
          nb_count_.push_back(a.count);
        }
      }
      nb_offsets_[v + 1] = static_cast<EdgeId>(nb_head_.size());
    }
    if (info_.has_global_sink && g.sink() && *info_.global_sink == *g.sink()) sink_ = g.sink();
  }

  const Digraph& graph() const noexcept { return *g_; }
  const GraphClassification& classification() const noexcept { return info_; }
  bool has_global_sink() const noexcept { return sink_.has_value(); }
  std::size_t vertex_count() const noexcept { return degree_.size(); }

  /// Vertices that can hold chips: everything except the designated sink.
  std::vector<Vertex> non_sink_vertices() const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < static_cast<Vertex>(vertex_count()); ++v)
      if (!is_designated_sink(v)) out.push_back(v);
    return out;
  }

  ChipConfig zero() const { return ChipConfig(vertex_count()); }

  ChipConfig unit(Vertex v) const {
    ChipConfig c = zero();
    require_chip_vertex(v);
    c[v] = 1;
    return c;
  }

  bool is_stable(const ChipConfig& s) const {
    validate(s);
    for (Vertex v = 0; v < static_cast<Vertex>(vertex_count()); ++v)
      if (is_active(s, v)) return false;
    return true;
  }

  bool is_active(const ChipConfig& s, Vertex v) const {
    return degree_[v] > 0 && s[v] >= degree_[v];
  }

  /// Fires an active vertex once: one chip along each out-edge. Chips that
  /// reach the sink disappear.
  ChipConfig fire(ChipConfig s, Vertex v) const {
    validate(s);
    detail::require(v >= 0 && v < static_cast<Vertex>(vertex_count()), "vertex out of range");
    detail::require(is_active(s, v), "vertex " + std::to_string(v) + " is not active");
    fire_times(s, v, 1);
    return s;
  }

  Stabilization stabilize(ChipConfig s, const StabilizeOptions& opt = {}) const {
    validate(s);
    if (!sink_ && !opt.step_cap)
      throw InvalidInput("stabilizing on a graph without a global sink requires a step cap");
    const auto n = static_cast<Vertex>(vertex_count());
    Odometer odo{std::vector<Count>(n, 0), 0};
    std::uint64_t steps = 0;
    auto charge = [&](Vertex v, Count q) {
      odo.fires[v] = detail::checked_add(odo.fires[v], q);
      steps += static_cast<std::uint64_t>(q);
      if (opt.step_cap && steps > *opt.step_cap) throw Nonterminating(*opt.step_cap);
    };

    switch (opt.policy) {
      case FiringPolicy::Bulk:
      case FiringPolicy::Fifo: {
        // Firing never increases the total, so once the total fits no entry
        // can overflow and the inner loop runs unchecked.
        (void)s.total();
        const bool bulk = opt.policy == FiringPolicy::Bulk;
        Count* chips = s.chips.data();
        const Count* deg = degree_.data();
        const Count* loops = loops_.data();
        std::vector<char> queued(n, 0);
        // ring buffer; every vertex is queued at most once
        std::vector<Vertex> ring(static_cast<std::size_t>(n) + 1);
        std::size_t head = 0, tail = 0;
        const std::size_t cap = ring.size();
        auto push = [&](Vertex w) {
          queued[w] = 1;
          ring[tail] = w;
          tail = tail + 1 == cap ? 0 : tail + 1;
        };
        for (Vertex v = 0; v < n; ++v)
          if (is_active(s, v)) push(v);
        while (head != tail) {
          tail = tail == 0 ? cap - 1 : tail - 1;
          Vertex v = ring[tail];
          queued[v] = 0;
          Count q = bulk ? chips[v] / deg[v] : 1;
          if (opt.step_cap)
            q = std::min<Count>(q, static_cast<Count>(*opt.step_cap - std::min(steps, *opt.step_cap)) + 1);
          charge(v, q);
          chips[v] -= q * (deg[v] - loops[v]);
          for (EdgeId i = nb_offsets_[v], end = nb_offsets_[v + 1]; i < end; ++i) {
            Vertex w = nb_head_[i];
            Count c = chips[w] += q * nb_count_[i];
            if (!queued[w] && c >= deg[w] && deg[w] > 0) push(w);
          }
          if (!queued[v] && deg[v] > 0 && chips[v] >= deg[v]) push(v);
        }
        break;
      }
      case FiringPolicy::Lifo: {
        std::vector<char> queued(n, 0);
        std::vector<Vertex> stack;
        for (Vertex v = n; v-- > 0;)
          if (is_active(s, v)) stack.push_back(v), queued[v] = 1;
        while (!stack.empty()) {
          Vertex v = stack.back();
          stack.pop_back();
          queued[v] = 0;
          charge(v, 1);
          fire_times(s, v, 1, [&](Vertex w) {
            if (!queued[w] && is_active(s, w)) stack.push_back(w), queued[w] = 1;
          });
          if (!queued[v] && is_active(s, v)) stack.push_back(v), queued[v] = 1;
        }
        break;
      }
      case FiringPolicy::Random: {
        std::mt19937_64 rng(opt.seed);
        std::vector<Vertex> active;
        std::vector<std::int64_t> pos(n, -1);
        auto add = [&](Vertex w) {
          if (pos[w] < 0 && is_active(s, w)) {
            pos[w] = static_cast<std::int64_t>(active.size());
            active.push_back(w);
          }
        };
        auto drop = [&](Vertex w) {
          std::int64_t p = pos[w];
          active[p] = active.back();
          pos[active[p]] = p;
          active.pop_back();
          pos[w] = -1;
        };
        for (Vertex v = 0; v < n; ++v) add(v);
        while (!active.empty()) {
          std::uniform_int_distribution<std::size_t> pick(0, active.size() - 1);
          Vertex v = active[pick(rng)];
          charge(v, 1);
          fire_times(s, v, 1, add);
          if (!is_active(s, v)) drop(v);
        }
        break;
      }
    }
    for (Vertex v = 0; v < n; ++v)
      odo.total_chip_moves =
          detail::checked_add(odo.total_chip_moves, detail::checked_mul(odo.fires[v], degree_[v]));
    return {std::move(s), std::move(odo)};
  }

  ChipConfig stabilized(ChipConfig s, const StabilizeOptions& opt = {}) const {
    return stabilize(std::move(s), opt).config;
  }

  /// E_v: add one chip at v and stabilize.
  ChipConfig chip_add(ChipConfig s, Vertex v) const {
    require_global_sink();
    require_chip_vertex(v);
    validate(s);
    s[v] = detail::checked_add(s[v], 1);
    return stabilized(std::move(s));
  }

  // Canonical configurations.

  /// delta(v) = outdeg(v) on non-sink vertices.
  ChipConfig delta() const {
    ChipConfig c = zero();
    for (Vertex v : non_sink_vertices()) c[v] = degree_[v];
    return c;
  }

  ChipConfig ones() const {
    ChipConfig c = zero();
    for (Vertex v : non_sink_vertices()) c[v] = 1;
    return c;
  }

  /// beta(v) = outdeg(v) - indeg(v); the chips "fired by the sink".
  ChipConfig beta() const {
    ChipConfig c = zero();
    for (Vertex v : non_sink_vertices()) {
      Count b = g_->out_degree(v) - g_->in_degree(v);
      if (b < 0)
        throw InvalidInput("beta has a negative entry at vertex " + std::to_string(v) +
                           "; graph is not Eulerian with sink");
      c[v] = b;
    }
    return c;
  }

  /// epsilon = 2 delta - (2 delta)°, positive at every non-sink vertex.
  const ChipConfig& epsilon() const {
    require_global_sink();
    if (!epsilon_) {
      ChipConfig twice = scaled(delta(), 2);
      epsilon_ = minus(twice, stabilized(twice));
    }
    return *epsilon_;
  }

  /// Recurrence of a stable configuration. The burning and peeling tests
  /// require an Eulerian digraph with sink.
  bool is_recurrent(const ChipConfig& s, RecurrenceTest test = RecurrenceTest::Epsilon) const {
    require_global_sink();
    detail::require(is_stable(s), "recurrence is only defined for stable configurations");
    switch (test) {
      case RecurrenceTest::Epsilon:
        return stabilized(plus(s, epsilon())) == s;
      case RecurrenceTest::Burning: {
        require_eulerian();
        return stabilized(plus(s, beta())) == s;
      }
      case RecurrenceTest::Peeling: {
        require_eulerian();
        return peel(s);
      }
    }
    return false;
  }

  /// Burning-algorithm run: (sigma + beta)° together with its odometer.
  Stabilization burn(const ChipConfig& s) const {
    require_global_sink();
    require_eulerian();
    return stabilize(plus(s, beta()));
  }

  /// Identity of the sandpile group: with z = 2 delta - 2, I = (z - z°)°.
  const ChipConfig& identity() const {
    require_global_sink();
    if (!identity_) {
      ChipConfig z = zero();
      for (Vertex v : non_sink_vertices()) {
        detail::require(degree_[v] >= 1, "every non-sink vertex needs an out-edge");
        z[v] = 2 * degree_[v] - 2;
      }
      identity_ = stabilized(minus(z, stabilized(z)));
    }
    return *identity_;
  }

  /// Group inverse via (zeta - zeta° - sigma)° with zeta = 3 delta - 3.
  ChipConfig inverse(const ChipConfig& s) const {
    require_recurrent(s, "inverse");
    ChipConfig zeta = zero();
    for (Vertex v : non_sink_vertices()) zeta[v] = 3 * degree_[v] - 3;
    return stabilized(minus(minus(zeta, stabilized(zeta)), s));
  }

  ChipConfig group_add(const ChipConfig& a, const ChipConfig& b) const {
    require_recurrent(a, "group_add");
    require_recurrent(b, "group_add");
    return stabilized(plus(a, b));
  }

  Integer group_order() const { return determinant(reduced_laplacian(*g_, require_global_sink())); }

  GroupStructure group_structure() const {
    return smith_normal_form(reduced_laplacian(*g_, require_global_sink()));
  }

  /// a ≡ b modulo the integer row span of the reduced Laplacian.
  bool equivalent_mod_laplacian(const SignedConfig& a, const SignedConfig& b) const {
    const Vertex s = require_global_sink();
    detail::require(a.values.size() == vertex_count() && b.values.size() == vertex_count(),
                    "configuration length must equal vertex count");
    IntegerMatrix lt = reduced_laplacian(*g_, s).transpose();
    std::vector<Rational> rhs;
    for (Vertex v : lt.labels()) rhs.emplace_back(Integer(static_cast<long>(a.values[v])) -
                                                  Integer(static_cast<long>(b.values[v])));
    for (const auto& x : solve_rational(lt, rhs))
      if (x.get_den() != 1) return false;
    return true;
  }

  /// The unique recurrent configuration equivalent to a:
  /// (a + (dmax - m)(delta - delta°))° with m = min(0, min a).
  ChipConfig recurrent_representative(const SignedConfig& a) const {
    require_global_sink();
    detail::require(a.values.size() == vertex_count(), "configuration length must equal vertex count");
    Count m = 0;
    for (Vertex v : non_sink_vertices()) m = std::min(m, a.values[v]);
    Count dmax = *std::max_element(degree_.begin(), degree_.end());
    ChipConfig d = delta();
    ChipConfig gap = minus(d, stabilized(d));
    ChipConfig b = zero();
    Count k = detail::checked_add(dmax, -m);
    for (Vertex v : non_sink_vertices())
      b[v] = detail::checked_add(a.values[v], detail::checked_mul(k, gap[v]));
    return stabilized(b);
  }

  /// Harmonic function modulo 1 of a configuration: the solution f of
  /// sum_w Lap'(v,w) f(w) = sigma(v), reduced into [0,1). Entry per vertex,
  /// 0 at the sink. The map is constant on sandpile classes (and so additive
  /// under group_add) when Lap' is symmetric, e.g. on bidirected graphs.
  std::vector<Rational> harmonic_rep(const ChipConfig& s) const {
    const Vertex sink = require_global_sink();
    validate(s);
    IntegerMatrix lap = reduced_laplacian(*g_, sink);
    std::vector<Rational> rhs;
    for (Vertex v : lap.labels()) rhs.emplace_back(static_cast<long>(s[v]));
    auto f = solve_rational(lap, rhs);
    std::vector<Rational> out(vertex_count(), Rational(0));
    for (std::size_t i = 0; i < f.size(); ++i) out[lap.labels()[i]] = mod_one(f[i]);
    return out;
  }

  // Cluster-firing.

  /// sigma - sum_{v in A} Lap'_v, or nullopt when some entry would go negative.
  std::optional<ChipConfig> try_cluster_fire(const ChipConfig& s, const std::vector<Vertex>& cluster) const {
    validate(s);
    detail::require(!cluster.empty(), "cluster must be nonempty");
    std::vector<char> in(vertex_count(), 0);
    for (Vertex v : cluster) {
      require_chip_vertex(v);
      in[v] = 1;
    }
    std::vector<Count> next(s.chips.begin(), s.chips.end());
    for (Vertex v = 0; v < static_cast<Vertex>(vertex_count()); ++v) {
      if (!in[v]) continue;
      next[v] = detail::checked_add(next[v], loops_[v] - degree_[v]);
      for (EdgeId i = nb_offsets_[v]; i < nb_offsets_[v + 1]; ++i)
        next[nb_head_[i]] = detail::checked_add(next[nb_head_[i]], nb_count_[i]);
    }
    for (Count c : next)
      if (c < 0) return std::nullopt;
    return ChipConfig(std::move(next));
  }

  ChipConfig cluster_fire(const ChipConfig& s, const std::vector<Vertex>& cluster) const {
    auto r = try_cluster_fire(s, cluster);
    if (!r) throw InvalidInput("cluster is not allowed to fire");
    return *r;
  }

  /// No nonempty cluster may fire. Uses the recurrence duality on Eulerian
  /// digraphs with sink, and a subset search (at most 16 non-sink vertices)
  /// otherwise.
  bool is_superstable(const ChipConfig& s) const {
    validate(s);
    if (sink_ && info_.eulerian_with_sink) {
      ChipConfig dual = zero();
      for (Vertex v : non_sink_vertices()) {
        if (s[v] > degree_[v] - 1) return false;
        dual[v] = degree_[v] - 1 - s[v];
      }
      return is_recurrent(dual);
    }
    auto verts = non_sink_vertices();
    if (verts.size() > 16) throw SizeGuard("superstability subset search limited to 16 non-sink vertices");
    for (std::uint32_t mask = 1; mask < (1u << verts.size()); ++mask) {
      std::vector<Vertex> cluster;
      for (std::size_t i = 0; i < verts.size(); ++i)
        if (mask & (1u << i)) cluster.push_back(verts[i]);
      if (try_cluster_fire(s, cluster)) return false;
    }
    return true;
  }

  /// Unique superstable configuration equivalent to sigma on an Eulerian
  /// digraph with sink: delta - 1 - (delta - 1 - sigma° + I)°.
  ChipConfig superstabilize(const ChipConfig& s) const {
    require_global_sink();
    require_eulerian();
    ChipConfig top = minus(delta(), ones());
    return minus(top, stabilized(plus(minus(top, stabilized(s)), identity())));
  }

  /// Checks total chip moves <= 2 m |sigma| R_max on a bidirected graph with
  /// sink, m being the number of directed edges.
  MoveBound move_bound_check(const ChipConfig& s, const Rational& r_max) const {
    require_global_sink();
    detail::require(info_.bidirected_with_sink, "move bound requires a bidirected graph with sink");
    MoveBound mb;
    mb.moves = stabilize(s).odometer.total_chip_moves;
    mb.bound = Rational(2) * Rational(static_cast<long>(g_->edge_count())) *
               Rational(static_cast<long>(s.total())) * r_max;
    mb.ok = Rational(static_cast<long>(mb.moves)) <= mb.bound;
    return mb;
  }

  // Componentwise arithmetic on configurations.

  ChipConfig plus(const ChipConfig& a, const ChipConfig& b) const {
    ChipConfig c = zero();
    for (std::size_t v = 0; v < c.size(); ++v) c.chips[v] = detail::checked_add(a.chips[v], b.chips[v]);
    return c;
  }

  /// a - b; throws if any entry would become negative.
  ChipConfig minus(const ChipConfig& a, const ChipConfig& b) const {
    ChipConfig c = zero();
    for (std::size_t v = 0; v < c.size(); ++v) {
      c.chips[v] = a.chips[v] - b.chips[v];
      detail::require(c.chips[v] >= 0, "configuration difference went negative");
    }
    return c;
  }

  ChipConfig scaled(const ChipConfig& a, Count k) const {
    ChipConfig c = zero();
    for (std::size_t v = 0; v < c.size(); ++v) c.chips[v] = detail::checked_mul(a.chips[v], k);
    return c;
  }

  void validate(const ChipConfig& s) const {
    detail::require(s.size() == vertex_count(), "configuration has " + std::to_string(s.size()) +
                                                    " entries, graph has " +
                                                    std::to_string(vertex_count()) + " vertices");
    for (Vertex v = 0; v < static_cast<Vertex>(s.size()); ++v) {
      detail::require(s[v] >= 0, "negative chip count at vertex " + std::to_string(v));
      if (is_designated_sink(v)) detail::require(s[v] == 0, "sink must hold 0 chips");
    }
  }

  Vertex require_global_sink() const {
    if (!sink_) throw InvalidInput("operation requires a designated global sink");
    return *sink_;
  }

 private:
  bool is_designated_sink(Vertex v) const { return g_->sink() && *g_->sink() == v; }

  void require_chip_vertex(Vertex v) const {
    detail::require(v >= 0 && v < static_cast<Vertex>(vertex_count()), "vertex out of range");
    detail::require(!is_designated_sink(v), "the sink cannot hold chips");
  }

  void require_eulerian() const {
    detail::require(info_.eulerian_with_sink, "operation requires an Eulerian digraph with sink");
  }

  void require_recurrent(const ChipConfig& s, const char* op) const {
    if (!is_stable(s) || !is_recurrent(s))
      throw InvalidInput(std::string(op) + " requires a recurrent configuration");
  }

  void fire_times(ChipConfig& s, Vertex v, Count q) const {
    fire_times(s, v, q, [](Vertex) {});
  }

  template <typename OnReceive>
  void fire_times(ChipConfig& s, Vertex v, Count q, OnReceive&& on_receive) const {
    s[v] = detail::checked_add(s[v], -detail::checked_mul(q, degree_[v] - loops_[v]));
    for (EdgeId i = nb_offsets_[v]; i < nb_offsets_[v + 1]; ++i) {
      Vertex w = nb_head_[i];
      s[w] = detail::checked_add(s[w], detail::checked_mul(q, nb_count_[i]));
      on_receive(w);
    }
  }

  bool peel(const ChipConfig& s) const {
    const auto n = static_cast<Vertex>(vertex_count());
    std::vector<char> remaining(n, 0);
    std::vector<Count> indeg(n, 0);
    for (Vertex v : non_sink_vertices()) remaining[v] = 1;
    for (Vertex v : non_sink_vertices()) {
      indeg[v] += loops_[v];
      for (EdgeId i = nb_offsets_[v]; i < nb_offsets_[v + 1]; ++i) indeg[nb_head_[i]] += nb_count_[i];
    }
    std::vector<Vertex> ready;
    for (Vertex v : non_sink_vertices())
      if (s[v] >= indeg[v]) ready.push_back(v);
    std::size_t removed = 0;
    while (!ready.empty()) {
      Vertex v = ready.back();
      ready.pop_back();
      if (!remaining[v]) continue;
      remaining[v] = 0;
      ++removed;
      for (EdgeId i = nb_offsets_[v]; i < nb_offsets_[v + 1]; ++i) {
        Vertex w = nb_head_[i];
        if (!remaining[w]) continue;
        bool was_ready = s[w] >= indeg[w];
        indeg[w] -= nb_count_[i];
        if (!was_ready && s[w] >= indeg[w]) ready.push_back(w);
      }
    }
    return removed == non_sink_vertices().size();
  }

  const Digraph* g_;
  GraphClassification info_;
  std::optional<Vertex> sink_;
  std::vector<Count> degree_;
  std::vector<Count> loops_;
  std::vector<EdgeId> nb_offsets_;
  std::vector<Vertex> nb_head_;
  std::vector<Count> nb_count_;
  mutable std::optional<ChipConfig> epsilon_;
  mutable std::optional<ChipConfig> identity_;
};

/// Calls fn on every stable configuration, odometer-style over non-sink
/// vertices in ascending order.
template <typename Fn>
void for_each_stable(const Sandpile& pile, Fn&& fn) {
  auto verts = pile.non_sink_vertices();
  ChipConfig c = pile.zero();
  const Digraph& g = pile.graph();
  for (Vertex v : verts)
    if (g.out_degree(v) == 0) return;
  while (true) {
    fn(static_cast<const ChipConfig&>(c));
    std::size_t i = 0;
    for (; i < verts.size(); ++i) {
      Vertex v = verts[i];
      if (++c[v] < g.out_degree(v)) break;
      c[v] = 0;
    }
    if (i == verts.size()) return;
  }
}

/// All recurrent configurations, by testing every stable one.
inline std::vector<ChipConfig> recurrent_configs(const Sandpile& pile) {
  std::vector<ChipConfig> out;
  for_each_stable(pile, [&](const ChipConfig& c) {
    if (pile.is_recurrent(c)) out.push_back(c);
  });
  return out;
}

namespace io {

/// `chips v1` followed by one count per vertex (the sink's is 0).
inline std::string serialize_chips(const ChipConfig& c) {
  std::ostringstream os;
  os << "chips v1\n";
  for (std::size_t i = 0; i < c.size(); ++i) os << c.chips[i] << ((i + 1) % 32 == 0 || i + 1 == c.size() ? '\n' : ' ');
  return os.str();
}

inline ChipConfig parse_chips(const Document& doc, const Digraph& g) {
  expect_kind(doc, "chips");
  auto tokens = doc.flat();
  if (tokens.size() != g.vertex_count())
    throw ParseError(doc.header_line, "expected " + std::to_string(g.vertex_count()) +
                                          " chip counts, got " + std::to_string(tokens.size()));
  ChipConfig c(g.vertex_count());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    c.chips[i] = to_int(tokens[i]);
    if (c.chips[i] < 0) throw ParseError(tokens[i].line, "negative chip count");
  }
  if (g.sink() && c[*g.sink()] != 0) throw ParseError(doc.header_line, "sink entry must be 0");
  return c;
}

}  // namespace io
}  // namespace sandlab
