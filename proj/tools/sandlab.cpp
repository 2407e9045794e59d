// sandlab: command-line front end. Stages read documents (a graph, then a
// configuration) from stdin or --in and write documents to stdout or --out,
// so they chain with pipes:
//
//   sandlab gen grid-wired 128 | sandlab identity | sandlab render --palette grid4 > id.ppm
//
// Usage errors exit 2, engine errors exit 1.

#include <algorithm>
#include <chrono>
#include <climits>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sandlab/sandlab.hpp"
#include "sandlab/verify.hpp"

namespace fs = std::filesystem;
using namespace sandlab;

namespace {

struct Streams {
  std::string in_path;
  std::string out_path;
};

std::string read_input(const Streams& st) {
  if (st.in_path.empty() || st.in_path == "-")
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  return verify::read_file(st.in_path);
}

void write_output(const Streams& st, const std::string& text) {
  if (st.out_path.empty() || st.out_path == "-") {
    std::cout.write(text.data(), static_cast<std::streamsize>(text.size()));
    std::cout.flush();
    return;
  }
  std::ofstream out(st.out_path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + st.out_path);
  out << text;
}

// Parsed pipeline input: the graph plus whatever documents follow it.
struct Input {
  Digraph graph;
  std::vector<io::Document> rest;

  const io::Document& next(const char* kind, std::size_t& cursor) const {
    for (; cursor < rest.size(); ++cursor)
      if (rest[cursor].kind == kind) return rest[cursor++];
    throw InvalidInput(std::string("input has no '") + kind + " v1' document");
  }
  ChipConfig chips() const {
    std::size_t c = 0;
    return io::parse_chips(next("chips", c), graph);
  }
  bool has(const char* kind) const {
    return std::any_of(rest.begin(), rest.end(), [&](const io::Document& d) { return d.kind == kind; });
  }
};

Input read_graph_input(const Streams& st) {
  auto docs = io::split_documents(read_input(st));
  if (docs.empty() || docs.front().kind != "sandgraph")
    throw ParseError(docs.empty() ? 1 : docs.front().header_line, "input must start with a 'sandgraph v1' document");
  Input in{io::parse_graph(docs.front()), {docs.begin() + 1, docs.end()}};
  return in;
}

StabilizeOptions cap_options() {
  StabilizeOptions opt;
  if (const char* env = std::getenv("SANDLAB_MAXSTEPS")) {
    try {
      opt.step_cap = std::stoull(env);
    } catch (const std::exception&) {
      throw InvalidInput(std::string("SANDLAB_MAXSTEPS is not a number: ") + env);
    }
  }
  return opt;
}

FiringPolicy parse_policy(const std::string& name) {
  if (name == "bulk") return FiringPolicy::Bulk;
  if (name == "fifo") return FiringPolicy::Fifo;
  if (name == "lifo") return FiringPolicy::Lifo;
  if (name == "random") return FiringPolicy::Random;
  throw InvalidInput("unknown policy '" + name + "'");
}

std::string odometer_comment(const Odometer& odo) {
  std::ostringstream os;
  os << "# odometer";
  for (Count f : odo.fires) os << ' ' << f;
  os << "\n# chip moves " << odo.total_chip_moves << '\n';
  return os.str();
}

std::vector<Vertex> parse_vertex_list(const std::string& text) {
  std::vector<Vertex> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(static_cast<Vertex>(std::stol(item)));
  return out;
}

// Acyclic rotors toward the sink: breadth-first in-tree, earliest edge.
RotorConfig default_tree(const Digraph& g) {
  const auto n = static_cast<Vertex>(g.vertex_count());
  Vertex sink = Sandpile(g).require_global_sink();
  std::vector<std::vector<std::pair<Vertex, int>>> rev(n);
  for (Vertex v = 0; v < n; ++v)
    for (int s = 0; s < g.out_degree(v); ++s) rev[g.out_heads(v)[s]].push_back({v, s});
  RotorConfig r;
  r.slots.assign(n, -1);
  std::vector<char> seen(n, 0);
  std::vector<Vertex> queue{sink};
  seen[sink] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (auto [u, s] : rev[queue[i]])
      if (!seen[u]) seen[u] = 1, r.slots[u] = s, queue.push_back(u);
  return r;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void write_file(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + p.string());
  out << bytes;
}

int run_verify(const std::string& corpus, bool full) {
  std::vector<verify::Check> checks{
      {"zero graph values", 1, verify::zero_graph_values},
      {"matrix-tree", 30, [] { return verify::matrix_tree(); }},
      {"abelian property", 10, [] { return verify::abelian_property(); }},
      {"recurrence tests", 60, verify::recurrence_tests_agree},
      {"unicycles", 30, verify::unicycle_theory},
      {"tree action", 60, [] { return verify::free_transitive_action(); }},
      {"tour formula", 60, [] { return verify::tour_formula(); }},
      {"superstable duality", 60, [] { return verify::superstable_duality(); }},
      {"bounds", 60, [] { return verify::bounds(); }},
      {"stacks", 30, [] { return verify::stack_engine(); }},
      {"aggregation square", 60, verify::aggregation_square},
  };
  if (full) checks.push_back({"aggregation inner ball", 600, verify::aggregation_inner_ball});
  if (!corpus.empty()) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(corpus))
      if (entry.path().extension() == ".sandgraph") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files)
      checks.push_back({"corpus " + f.filename().string(), 120,
                        [f] { return verify::corpus_graph(io::parse_graph(verify::read_file(f))); }});
  }
  int failed = 0;
  for (const auto& c : checks) {
    auto r = verify::run_check(c);
    std::printf("[%s] %s (%.2f s)%s%s\n", r.ok ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                r.detail.empty() ? "" : ": ", r.detail.c_str());
    std::fflush(stdout);
    failed += r.ok ? 0 : 1;
  }
  std::printf("%zu checks, %d failed\n", checks.size(), failed);
  return failed == 0 ? 0 : 1;
}

// Identity images and aggregation pictures. Large sizes are opt-in.
void reproduce_figures(const fs::path& dir, bool large) {
  fs::create_directories(dir);
  struct Fig {
    std::string name;
    std::function<Digraph()> make;
    Palette palette;
    bool big;
  };
  std::vector<Fig> figs{
      {"grid_wired_128", [] { return gen::grid_wired(128); }, Palette::Grid4, false},
      {"grid_wired_198", [] { return gen::grid_wired(198); }, Palette::Grid4, false},
      {"grid_wired_243", [] { return gen::grid_wired(243); }, Palette::Grid4, true},
      {"grid_wired_521", [] { return gen::grid_wired(521); }, Palette::Grid4, true},
      {"torus_100", [] { return gen::directed_torus(100); }, Palette::Torus2, false},
      {"torus_500", [] { return gen::directed_torus(500); }, Palette::Torus2, true},
      {"disk_wired_100", [] { return gen::disk_wired(100); }, Palette::Grid4, false},
      {"disk_wired_512", [] { return gen::disk_wired(512); }, Palette::Grid4, true},
      {"disk_wired_521", [] { return gen::disk_wired(521); }, Palette::Grid4, true},
  };
  for (const auto& f : figs) {
    if (f.big && !large) {
      std::printf("%-24s skipped (pass --large)\n", f.name.c_str());
      continue;
    }
    auto t0 = std::chrono::steady_clock::now();
    Digraph g = f.make();
    Sandpile pile(g);
    const ChipConfig& id = pile.identity();
    write_file(dir / (f.name + "_identity.ppm"), to_ppm(render_config(g, id, f.palette)));
    std::printf("%-24s identity %.2f s, %lld chips\n", f.name.c_str(), seconds_since(t0),
                static_cast<long long>(id.total()));
    std::fflush(stdout);
  }
  {
    // 100,000 chips at the centre of a wired disk: stable and superstable.
    auto t0 = std::chrono::steady_clock::now();
    Digraph g = gen::disk_wired(large ? 600 : 300);
    Sandpile pile(g);
    Vertex centre = 0;
    std::int64_t best = INT64_MAX;
    for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v)
      if (auto c = g.coord(v); c && c->x * c->x + c->y * c->y < best) best = c->x * c->x + c->y * c->y, centre = v;
    ChipConfig s = pile.zero();
    s[centre] = 100'000;
    auto st = pile.stabilize(s);
    write_file(dir / "stable_100000.ppm", to_ppm(render_config(g, st.config, Palette::Grid4)));
    ChipConfig sup = pile.superstabilize(s);
    write_file(dir / "superstable_100000.ppm", to_ppm(render_config(g, sup, Palette::Grid4)));
    std::printf("%-24s %.2f s, %lld chip moves\n", "stable/superstable 1e5", seconds_since(t0),
                static_cast<long long>(st.odometer.total_chip_moves));
  }
  for (Count hole : {-2, -1, 0}) {
    auto t0 = std::chrono::steady_clock::now();
    Count n = large ? 250'000 : 25'000;
    Aggregate a = aggregate(n, hole);
    std::string name = "aggregate_h" + std::to_string(-hole) + "_" + std::to_string(n);
    write_file(dir / (name + ".ppm"), to_ppm(render_aggregate(a)));
    std::printf("%-24s %.2f s, radius %lld, %llu firings, square=%d\n", name.c_str(), seconds_since(t0),
                static_cast<long long>(a.fired_radius()), static_cast<unsigned long long>(a.total_firings()),
                a.fired_set_is_square() ? 1 : 0);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sandlab: abelian sandpiles and rotor-routers on directed multigraphs"};
  app.require_subcommand(1);
  Streams st;
  auto add_io = [&](CLI::App* sub) {
    sub->add_option("--in", st.in_path, "input file (default stdin)");
    sub->add_option("--out", st.out_path, "output file (default stdout)");
  };
  std::function<void()> action;

  // gen
  std::string family;
  std::vector<long> gen_args;
  int gen_sink = -1;
  auto* gen_cmd = app.add_subcommand("gen", "generate a graph family member");
  gen_cmd->add_option("family", family,
                      "grid-wired L | grid R C | torus L | disk-wired D | complete K | complete-with-sink K | cycle K | path L")
      ->required();
  gen_cmd->add_option("args", gen_args, "family parameters")->required();
  gen_cmd->add_option("--sink", gen_sink, "make this vertex the sink (drops its out-edges)");
  add_io(gen_cmd);
  gen_cmd->callback([&] {
    action = [&] {
      Digraph g = gen::generate(family, gen_args);
      if (gen_sink >= 0) g = with_sink(g, gen_sink);
      write_output(st, io::serialize_graph(g));
    };
  });

  // stabilize
  std::string policy = "bulk";
  std::uint64_t seed = 1;
  bool show_odometer = false;
  auto* stab = app.add_subcommand("stabilize", "stabilize a chip configuration");
  stab->add_option("--policy", policy, "bulk | fifo | lifo | random");
  stab->add_option("--seed", seed, "seed for the random policy");
  stab->add_flag("--odometer", show_odometer, "append the odometer as comments");
  add_io(stab);
  stab->callback([&] {
    action = [&] {
      Input in = read_graph_input(st);
      Sandpile pile(in.graph);
      StabilizeOptions opt = cap_options();
      opt.policy = parse_policy(policy);
      opt.seed = seed;
      if (!pile.has_global_sink() && !opt.step_cap) opt.step_cap = 10'000'000;
      auto res = pile.stabilize(in.chips(), opt);
      write_output(st, io::serialize_graph(in.graph) + io::serialize_chips(res.config) +
                           (show_odometer ? odometer_comment(res.odometer) : ""));
    };
  });

  // identity / inverse / superstabilize / group / recurrent
  auto* ident = app.add_subcommand("identity", "identity element of the sandpile group");
  add_io(ident);
  ident->callback([&] {
    action = [&] {
      Input in = read_graph_input(st);
      Sandpile pile(in.graph);
      write_output(st, io::serialize_graph(in.graph) + io::serialize_chips(pile.identity()));
    };
  });
  auto* inv = app.add_subcommand("inverse", "group inverse of a recurrent configuration");
  add_io(inv);
  inv->callback([&] {
    action = [&] {
      Input in = read_graph_input(st);
      Sandpile pile(in.graph);
      write_output(st, io::serialize_graph(in.graph) + io::serialize_chips(pile.inverse(in.chips())));
    };
  });
  auto* sup = app.add_subcommand("superstabilize", "equivalent superstable configuration (Eulerian with sink)");
  add_io(sup);
  sup->callback([&] {
    action = [&] {
      Input in = read_graph_input(st);
      Sandpile pile(in.graph);
      write_output(st, io::serialize_graph(in.graph) + io::serialize_chips(pile.superstabilize(in.chips())));
    };
  });
  auto* grp = app.add_subcommand("group", "order and invariant factors of the sandpile group");
  add_io(grp);
  grp->callback([&] {
    action = [&] {
      Input in = read_graph_input(st);
      Sandpile pile(in.graph);
      auto gs = pile.group_structure();
      std::ostringstream os;
      os << "order " << gs.order << "\nstructure " << gs << '\n';
      write_output(st, os.str());
    };
  });
  std::string rec_test = "epsilon";
  bool rec_list = false;
  auto* rec = app.add_subcommand("recurrent", "test a configuration for recurrence, or list all");
  rec->add_option("--test", rec_test, "epsilon | burning | peeling");
  rec->add_flag("--list", rec_list, "list every recurrent configuration instead");
  add_io(rec);
  rec->callback([&] {
    action = [&] {
      Input in = read_graph_input(st);
      Sandpile pile(in.graph);
      if (rec_list) {
        std::string out;
        for (const auto& c : recurrent_configs(pile)) out += io::serialize_chips(c);
        write_output(st, out);
        return;
      }
      RecurrenceTest t = rec_test == "epsilon"   ? RecurrenceTest::Epsilon
                         : rec_test == "burning" ? RecurrenceTest::Burning
                         : rec_test == "peeling" ? RecurrenceTest::Peeling
                                                 : throw InvalidInput("unknown test '" + rec_test + "'");
      ChipConfig c = in.chips();
      bool r = pile.is_stable(c) && pile.is_recurrent(c, t);
      write_output(st, r ? "recurrent\n" : "not recurrent\n");
    };
  });

  // rotor-orbit
  int chip = 0;
  bool list_states = false;
  auto* orb = app.add_subcommand("rotor-orbit", "follow a single-chip rotor walk until it returns (default start: a unicycle)");
  orb->add_option("--chip", chip, "chip vertex")->required();
  orb->add_flag("--states", list_states, "print every state of the orbit");
  add_io(orb);
  orb->callback([&] {
    action = [&] {
      Input in = read_graph_input(st);
      RotorRouter router(in.graph);
      std::size_t c = 0;
      SingleChipState s = in.has("rotors") ? SingleChipState{chip, io::parse_rotors(in.next("rotors", c), in.graph)}
                                           : verify::unicycle_at(in.graph, chip);
      auto cert = router.unicycle(s);
      std::ostringstream os;
      os << "unicycle " << (cert ? "yes" : "no") << '\n';
      auto orbit = router.orbit(s);
      os << "orbit length " << orbit.states.size() << '\n';
      if (list_states)
        for (const auto& x : orbit.states) os << "# chip " << x.chip << '\n' << io::serialize_rotors(x.rotors);
      write_output(st, os.str());
    };
  });

  // tour
  int tour_edge = 0;
  auto* tour = app.add_subcommand("tour", "Eulerian tour traced by the rotor walk, starting with an edge");
  tour->add_option("--edge", tour_edge, "starting edge id")->required();
  add_io(tour);
  tour->callback([&] {
    action = [&] {
      Input in = read_graph_input(st);
      const Digraph& g = in.graph;
      RotorRouter router(g);
      detail::require(tour_edge >= 0 && tour_edge < static_cast<int>(g.edge_count()), "edge out of range");
      Vertex w = g.tail(tour_edge);
      int d = g.out_degree(w);
      SingleChipState u = in.has("rotors")
                              ? SingleChipState{w, [&] {
                                                  std::size_t c = 0;
                                                  return io::parse_rotors(in.next("rotors", c), g);
                                                }()}
                              : verify::unicycle_at(g, w, (g.slot_of(tour_edge) + d - 1) % d);
      auto t = router.eulerian_tour(u, tour_edge);
      std::ostringstream os;
      os << "tour";
      for (EdgeId e : t) os << ' ' << e;
      os << '\n';
      write_output(st, os.str());
    };
  });

  // bijection
  bool bij_inverse = false;
  auto* bij = app.add_subcommand("bijection", "recurrent configuration -> spanning tree (or back with --inverse)");
  bij->add_flag("--inverse", bij_inverse, "map a tree (rotors) back to its recurrent configuration");
  add_io(bij);
  bij->callback([&] {
    action = [&] {
      Input in = read_graph_input(st);
      RotorRouter router(in.graph);
      // optional base tree: a rotors document before the payload
      std::vector<RotorConfig> rotors;
      for (const auto& d : in.rest)
        if (d.kind == "rotors") rotors.push_back(io::parse_rotors(d, in.graph));
      if (bij_inverse) {
        detail::require(!rotors.empty(), "--inverse needs a rotors document (the tree)");
        RotorConfig base = rotors.size() >= 2 ? rotors[0] : default_tree(in.graph);
        TreeBijection tb(router, base);
        write_output(st, io::serialize_graph(in.graph) + io::serialize_chips(tb.config_of(rotors.back())));
      } else {
        RotorConfig base = rotors.empty() ? default_tree(in.graph) : rotors[0];
        TreeBijection tb(router, base);
        write_output(st, io::serialize_graph(in.graph) + io::serialize_rotors(tb.tree_of(in.chips())));
      }
    };
  });

  // hitting-bound
  std::string y_list, z_list;
  auto* hit = app.add_subcommand("hitting-bound", "rotor walk hitting counts vs random-walk probabilities");
  hit->add_option("--Y", y_list, "comma-separated target set Y (subset of Z)")->required();
  hit->add_option("--Z", z_list, "comma-separated stopping set Z")->required();
  add_io(hit);
  hit->callback([&] {
    action = [&] {
      Input in = read_graph_input(st);
      RotorRouter router(in.graph);
      std::size_t c = 0;
      RotorConfig r = in.has("rotors") ? io::parse_rotors(in.next("rotors", c), in.graph) : router.uniform(0);
      auto hb = router.hitting_bound_check(parse_vertex_list(y_list), parse_vertex_list(z_list), in.chips(), r);
      std::ostringstream os;
      os << "rotor " << hb.walk_count << "\nexpected " << hb.expected_count << "\ndifference " << hb.lhs << "\nbound "
         << hb.rhs << "\nok " << (hb.ok ? "yes" : "no") << '\n';
      write_output(st, os.str());
    };
  });

  // stacks
  std::string stack_op = "acyclic";
  int stack_vertex = -1;
  auto* stk = app.add_subcommand("stacks", "stack operations: acyclic | add | inverse | rotors");
  stk->add_option("op", stack_op, "acyclic (pop cycles), add (E_v), inverse (E_v^-1), rotors (stacks from rotors)");
  stk->add_option("--vertex", stack_vertex, "vertex for add / inverse");
  add_io(stk);
  stk->callback([&] {
    action = [&] {
      Input in = read_graph_input(st);
      StackEngine eng(in.graph);
      std::size_t c = 0;
      std::string out = io::serialize_graph(in.graph);
      if (stack_op == "rotors") {
        out += io::serialize_stacks(eng.from_rotors(io::parse_rotors(in.next("rotors", c), in.graph)));
      } else {
        StackConfig s = io::parse_stacks(in.next("stacks", c), in.graph);
        if (stack_op == "acyclic") {
          auto res = eng.pop_to_acyclic(s);
          out += io::serialize_stacks(res.stacks);
          for (const auto& cyc : res.popped) {
            out += "# popped";
            for (Vertex v : cyc) out += ' ' + std::to_string(v);
            out += '\n';
          }
        } else if (stack_op == "add" || stack_op == "inverse") {
          detail::require(stack_vertex >= 0, "--vertex is required");
          if (stack_op == "add") {
            auto w = eng.chip_add(s, stack_vertex);
            out += io::serialize_stacks(w.stacks) + "# path";
            for (Vertex v : w.path) out += ' ' + std::to_string(v);
            out += '\n';
          } else {
            out += io::serialize_stacks(eng.chip_add_inverse(s, stack_vertex));
          }
        } else {
          throw InvalidInput("unknown stack operation '" + stack_op + "'");
        }
      }
      write_output(st, out);
    };
  });

  // aggregate
  long long agg_chips = 0, agg_hole = 0;
  std::string agg_image;
  auto* agg = app.add_subcommand("aggregate", "add n chips at the origin of Z^2 over holes of depth H");
  agg->add_option("--chips", agg_chips, "number of chips n")->required();
  agg->add_option("--hole", agg_hole, "hole depth H (background height -H, H >= -2)");
  agg->add_option("--image", agg_image, "write the fired region as PPM");
  add_io(agg);
  agg->callback([&] {
    action = [&] {
      Aggregate a = aggregate(agg_chips, agg_hole);
      if (!agg_image.empty()) write_file(agg_image, to_ppm(render_aggregate(a)));
      std::ostringstream os;
      os << "fired " << a.fired_count() << "\nradius " << a.fired_radius() << "\nsquare "
         << (a.fired_set_is_square() ? "yes" : "no") << "\nfirings " << a.total_firings() << '\n';
      write_output(st, os.str());
    };
  });

  // render
  std::string palette = "grid4";
  int cell = 1;
  auto* ren = app.add_subcommand("render", "draw a configuration on an embedded graph as PPM (P6)");
  ren->add_option("--palette", palette, "grid4 | torus2");
  ren->add_option("--cell", cell, "pixels per vertex");
  add_io(ren);
  ren->callback([&] {
    action = [&] {
      Input in = read_graph_input(st);
      write_output(st, to_ppm(render_config(in.graph, in.chips(), parse_palette(palette), cell)));
    };
  });

  // verify
  std::string corpus;
  bool full = false;
  int verify_status = 0;
  auto* ver = app.add_subcommand("verify", "run the property suite, plus checks on a corpus of graphs");
  ver->add_option("--corpus", corpus, "directory of .sandgraph files");
  ver->add_flag("--full", full, "include the slower aggregation checks");
  ver->callback([&] { action = [&] { verify_status = run_verify(corpus, full); }; });

  // bench
  std::vector<long> bench_sizes{64, 128};
  long long bench_agg = 10'000;
  auto* bench = app.add_subcommand("bench", "time identity computations and aggregation");
  bench->add_option("--grid", bench_sizes, "grid-wired sizes");
  bench->add_option("--aggregate", bench_agg, "chips for an h = 2 aggregation run");
  bench->callback([&] {
    action = [&] {
      for (long L : bench_sizes) {
        auto t0 = std::chrono::steady_clock::now();
        Digraph g = gen::grid_wired(L);
        Sandpile pile(g);
        ChipConfig z = pile.zero();
        for (Vertex v : pile.non_sink_vertices()) z[v] = 2 * g.out_degree(v) - 2;
        auto first = pile.stabilize(z);
        auto second = pile.stabilize(pile.minus(z, first.config));
        std::printf("grid-wired %-5ld identity %8.2f s, chip moves %lld + %lld\n", L, seconds_since(t0),
                    static_cast<long long>(first.odometer.total_chip_moves),
                    static_cast<long long>(second.odometer.total_chip_moves));
        std::fflush(stdout);
      }
      if (bench_agg > 0) {
        auto t0 = std::chrono::steady_clock::now();
        Aggregate a = aggregate(bench_agg, -2);
        std::printf("aggregate n=%lld h=2 %8.2f s, %llu firings, radius %lld\n", bench_agg, seconds_since(t0),
                    static_cast<unsigned long long>(a.total_firings()), static_cast<long long>(a.fired_radius()));
      }
    };
  });

  // figures
  std::string fig_dir = "figures";
  bool fig_large = false;
  auto* figs = app.add_subcommand("figures", "write identity and aggregation images");
  figs->add_option("--dir", fig_dir, "output directory");
  figs->add_flag("--large", fig_large, "include the large sizes (slow)");
  figs->callback([&] { action = [&] { reproduce_figures(fig_dir, fig_large); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    action();
  } catch (const Error& e) {
    std::cerr << "sandlab: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "sandlab: " << e.what() << '\n';
    return 1;
  }
  return verify_status;
}
