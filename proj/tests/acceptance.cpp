// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (0 when all pass).
//
// The grid-wired 521 identity run in criterion 12 is opt-in: set SANDLAB_LARGE=1.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "sandlab/verify.hpp"

using namespace sandlab;
using verify::Outcome;

namespace {

Outcome combine(std::initializer_list<std::function<Outcome()>> parts) {
  Outcome all;
  for (const auto& p : parts) {
    Outcome o = p();
    if (!o.ok) all.fail(o.detail);
    else all.note(o.detail);
  }
  return all;
}

bool large_enabled() {
  const char* v = std::getenv("SANDLAB_LARGE");
  return v && std::string(v) == "1";
}

}  // namespace

int main() {
  std::vector<verify::Check> checks{
      {"1 zero graph: order, Z/3, identity, recurrent set, harmonic reps", 1, verify::zero_graph_values},
      {"2 matrix-tree: det = spanning-tree count (families <= 12 vertices, 200 random)", 30,
       [] { return verify::matrix_tree(); }},
      {"3 abelian property: four firing policies agree on 100 instances", 10, [] { return verify::abelian_property(); }},
      {"4 recurrence tests agree with terminal-SCC oracle (Eulerian with sink, <= 4 non-sink)", 60,
       verify::recurrence_tests_agree},
      {"5 unicycles = closed orbits (<= 6 edges); Eulerian orbit |E|; 3x4 grid orbit 34", 30,
       verify::unicycle_theory},
      {"6 free transitive action on spanning trees (<= 60 trees)", 60, [] { return verify::free_transitive_action(); }},
      {"7 Eulerian tour count = T(G,w) prod (d_v - 1)!", 60, [] { return verify::tour_formula(); }},
      {"8 superstable = delta - 1 - recurrent; cluster-firing confluence", 60,
       [] { return verify::superstable_duality(); }},
      {"9 hitting-probability bound (50) and move bound (50)", 60, [] { return verify::bounds(); }},
      {"10 stacks: rotor equivalence, popping confluence, commutation, inverse + loop erasure", 30,
       [] { return verify::stack_engine(); }},
      {"11 aggregation: square for h = 2 (n = 1e4, 2.5e5), inner ball for h = 0, 1 (n = 1e5)", 600,
       [] {
         return combine({verify::aggregation_square, verify::aggregation_square_large, verify::aggregation_inner_ball});
       }},
      {"12 identity renders match goldens; grid-wired 521 identity within 30 min", 1800,
       [] {
         Outcome o = verify::figure_goldens(SANDLAB_GOLDEN_DIR);
         if (!o.ok) return o;
         if (!large_enabled()) {
           o.note("grid-wired 521 not run (opt-in: SANDLAB_LARGE=1)");
           return o;
         }
         return combine({[o] { return o; }, [] { return verify::large_identity(521); }});
       }},
  };

  int failed = 0;
  for (const auto& c : checks) {
    auto r = verify::run_check(c);
    std::printf("[%s] %s (%.2f s, limit %.0f s)%s%s\n", r.ok ? "PASS" : "FAIL", r.name.c_str(), r.seconds, r.limit,
                r.detail.empty() ? "" : ": ", r.detail.c_str());
    std::fflush(stdout);
    if (!r.ok) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(checks.size()) - failed, checks.size());
  return failed;
}
