// End-to-end acceptance run. Each numbered criterion prints exactly one
// PASS/FAIL line; the process exits nonzero if any of them fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "cpg/bounds.hpp"
#include "cpg/decompose.hpp"
#include "cpg/gen.hpp"
#include "cpg/suite.hpp"

using namespace cpg;

namespace {

int g_failures = 0;
auto g_t0 = std::chrono::steady_clock::now();

void report(int idx, const std::string& name, bool pass, const std::string& extra = "") {
  auto now = std::chrono::steady_clock::now();
  double secs = std::chrono::duration<double>(now - g_t0).count();
  std::printf("criterion %2d %-34s %s%s%s  [t=%.1fs]\n", idx, name.c_str(),
              pass ? "PASS" : "FAIL", extra.empty() ? "" : "  ", extra.c_str(), secs);
  if (!pass) ++g_failures;
}

struct CorpusEntry {
  std::string kind;  // "lgg" or "udg"
  GeoGraph<Rat> graph;
  Decomposition<Rat> dec;
};

std::vector<Point<Rat>> rationalize(const std::vector<Point<double>>& pts) {
  std::vector<Point<Rat>> out;
  for (const auto& p : pts) out.push_back({rat_from_double(p.x), rat_from_double(p.y)});
  return out;
}

}  // namespace

int main() {
  // ---- criterion 1: the two path-restriction engines agree -----------------
  {
    std::mt19937_64 rng(1001);
    std::size_t checked = 0, disagreements = 0;
    while (checked < 10000) {
      int nu = 1 + int(rng() % 6), nv = 1 + int(rng() % 6);
      double density = 0.1 + 0.1 * double(rng() % 9);
      Obg g = gen_random_obg(nu, nv, density, rng());
      auto rb = is_prbg(g, PrbgEngine::BruteForce);
      auto rf = is_prbg(g, PrbgEngine::Fast);
      if (rb.prbg != rf.prbg) ++disagreements;
      if (!rf.prbg) {
        // fast witness must certify the violation
        if (!rf.witness || back_edges(g, rf.witness->path).empty()) ++disagreements;
      }
      ++checked;
    }
    report(1, "engine agreement 10^4", disagreements == 0,
           "checked=" + std::to_string(checked));
  }

  // ---- corpus construction -------------------------------------------------
  std::vector<CorpusEntry> corpus;
  std::size_t decompose_failures = 0;
  std::string first_failure;
  auto add_instance = [&](const std::string& kind, const GeoGraph<Rat>& g) {
    try {
      CorpusEntry e{kind, g, decompose_full(g)};
      corpus.push_back(std::move(e));
    } catch (const std::exception& ex) {
      ++decompose_failures;
      if (first_failure.empty()) first_failure = ex.what();
    }
  };
  for (int n = 8; n <= 30; ++n)
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
      auto pts = rationalize(gen_random_convex(n, seed));
      add_instance("lgg", greedy_maximal_lgg(pts, shuffled_edge_order(pts, seed)));
    }
  for (int n = 7; n <= 24; ++n) {
    auto g = to_rational_graph(build_udg(gen_regular_unit_polygon(n), 1e-9));
    add_instance("udg", g);
  }
  std::vector<std::vector<Point<double>>> optimized;
  for (int n = 8; n <= 16; ++n) {
    OptimizeSchedule sched;
    sched.iterations = 1200;
    auto r = optimize_unit_distances(n, 7, sched);
    optimized.push_back(r.best_points);
    add_instance("udg", to_rational_graph(build_udg(r.best_points, 1e-9)));
  }

  // ---- criterion 2: the corpus decomposes ----------------------------------
  report(2, "corpus decomposes, >= 200", corpus.size() >= 200 && decompose_failures == 0,
         "ok=" + std::to_string(corpus.size()) +
             " failed=" + std::to_string(decompose_failures) +
             (first_failure.empty() ? "" : " first: " + first_failure));

  // ---- criterion 3: dropped-edge budgets -----------------------------------
  {
    bool ok = true;
    for (const auto& e : corpus) {
      std::size_t n = e.graph.n();
      std::size_t trims = e.dec.left_trimmed.size() + e.dec.right_trimmed.size();
      if (e.dec.noncrossing_dropped.size() > 2 * n) ok = false;
      if (e.dec.noncrossing_dropped.size() + trims > 3 * n) ok = false;
    }
    report(3, "dropped <= 2n, total <= 3n", ok);
  }

  // ---- criterion 4: structural tree lemmas at 100% -------------------------
  {
    std::size_t checks = 0, fails = 0;
    for (const auto& e : corpus)
      for (const Obg* h : {&e.dec.g1, &e.dec.g2})
        for (auto sel : {StructureLemma::TreeEdges, StructureLemma::DisjointRanges}) {
          ++checks;
          if (!verify_structure(*h, sel).pass) ++fails;
        }
    report(4, "tree edges + disjoint ranges", fails == 0,
           "checks=" + std::to_string(checks) + " fails=" + std::to_string(fails));
  }

  // ---- criterion 5: separator crossing bound, >= 10^5 applicable checks ----
  {
    std::size_t applicable = 0, fails = 0;
    auto sweep = [&](const Obg& g) {
      for (int u = 0; u <= g.u_count(); ++u)
        for (int v = 0; v <= g.v_count(); ++v) {
          auto rep = crossing_lemma_check(g, u, v);
          for (const CrossingCheck* c : {&rep.u_premise, &rep.v_premise})
            if (c->applicable) {
              ++applicable;
              if (!c->pass) ++fails;
            }
        }
    };
    for (const auto& e : corpus) {
      sweep(e.dec.g1);
      sweep(e.dec.g2);
    }
    std::mt19937_64 rng(2024);
    while (applicable < 100000) {
      Obg g = gen_random_obg(4 + int(rng() % 9), 4 + int(rng() % 9), 0.25, rng());
      if (!is_prbg(g, PrbgEngine::Fast).prbg) continue;
      sweep(g);
    }
    report(5, "crossing bound 10^5 separators", fails == 0 && applicable >= 100000,
           "applicable=" + std::to_string(applicable));
  }

  // ---- criterion 6: divide-and-conquer certificates ------------------------
  {
    bool ok = true;
    for (const auto& e : corpus)
      for (const Obg* h : {&e.dec.g1, &e.dec.g2}) {
        auto cert = dnc_edge_bound(*h);  // throws if below the edge count
        double n = double(h->n());
        double rhs = n > 1 ? n * std::log2(n) + 4.0 * n : 4.0 * n;
        if (double(cert.total_bound) > rhs) ok = false;
      }
    report(6, "dnc bound sound and <= nlogn+4n", ok);
  }

  // ---- criterion 7: lower-bound generator ----------------------------------
  {
    bool ok = true;
    std::string note;
    for (int k = 0; k <= 10; ++k) {
      Obg g = gen_lower_bound_prbg(k);
      if (!is_prbg(g, PrbgEngine::Fast).prbg) {
        ok = false;
        note = "k=" + std::to_string(k) + " not path restricted";
        break;
      }
      double n = double(g.n());
      double density = double(g.edge_count()) / (n * std::log2(n));
      if (density < 0.25) {
        ok = false;
        char buf[96];
        std::snprintf(buf, sizeof(buf), "k=%d achieved density %.4f < 0.25", k,
                      density);
        note = buf;
        break;
      }
    }
    // exact maxima bracket the construction while the search fits the
    // suite budget; the 8-per-side case runs beyond it (tens of minutes),
    // its result is recorded in the README instead
    for (int k = 0; k <= 2; ++k) {
      int m = 1 << k;
      auto exact = max_prbg_edges_exact(m, m);
      if (gen_lower_bound_prbg(k).edge_count() > exact.count) {
        ok = false;
        note += (note.empty() ? "" : "; ") + std::string("k=") +
                std::to_string(k) + " exceeds the exact maximum";
      }
    }
    report(7, "lower-bound generator k<=10", ok, note);
  }

  // ---- criterion 8: forbidden patterns -------------------------------------
  {
    bool udg_clean = true;
    std::size_t udg_graphs = 0;
    for (const auto& e : corpus) {
      if (e.kind != "udg") continue;
      ++udg_graphs;
      if (!detect_forbidden_udg_patterns(e.dec.g1).empty() ||
          !detect_forbidden_udg_patterns(e.dec.g2).empty())
        udg_clean = false;
    }
    bool udg_sparse = true;
    for (const auto& e : corpus)
      if (e.kind == "udg" && e.graph.edges.size() > 3 * e.graph.n()) udg_sparse = false;
    // Constructed LGG whose ordered form contains the pattern. The pattern
    // needs two U-vertices adjacent to both v1 and v2; when all U-points lie
    // on one side of line(v1,v2) that is impossible (the acute-angle
    // constraints of the two shared verts force contradictory projections),
    // so the apex is placed on the opposite side of the v-line instead.
    // Vertices 0..4: v1, v2, u1, u2, apex; U ordered by x-coordinate.
    GeoGraph<Rat> wit;
    wit.points = {{-1, 0}, {1, 0}, {Rat(-1) / 2, -1}, {0, Rat(-3) / 2},
                  {Rat(1) / 2, Rat(11) / 10}};
    wit.edges = {{0, 2}, {1, 2}, {1, 3}, {0, 4}, {1, 4}};
    wit.normalize();
    Obg wit_obg(3, 2, {{1, 1}, {1, 2}, {2, 2}, {3, 1}, {3, 2}});
    bool lgg_witness =
        is_valid_lgg(wit) && !detect_forbidden_udg_patterns(wit_obg).empty();
    report(8, "patterns: udg clean, lgg witness",
           udg_clean && udg_sparse && lgg_witness,
           "udg_graphs=" + std::to_string(udg_graphs) +
               " witness=constructed 5-point lgg");
  }

  // ---- criterion 9: module lemmas on the unit-distance corpus --------------
  {
    std::size_t checks = 0, fails = 0;
    double worst_ratio = 0.0;
    for (const auto& e : corpus) {
      if (e.kind != "udg") continue;
      for (const Obg* h : {&e.dec.g1, &e.dec.g2}) {
        auto md = detect_modules(*h);
        for (auto sel : {ModuleLemma::FusingMatching, ModuleLemma::LinearSeparableLink,
                         ModuleLemma::FusingTotalLinear, ModuleLemma::Partition}) {
          ++checks;
          auto rep = verify_module_lemma(*h, md, sel);
          if (!rep.pass) ++fails;
          if (sel == ModuleLemma::FusingTotalLinear)
            worst_ratio = std::max(worst_ratio, rep.constant);
        }
      }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "checks=%zu ratio<=%.3f", checks, worst_ratio);
    report(9, "module lemmas on udg corpus", fails == 0 && worst_ratio <= 2.0, buf);
  }

  // ---- criterion 10: unit-distance counts ----------------------------------
  {
    bool ok = true;
    for (int n = 7; n <= 24; ++n) {
      auto g = build_udg(gen_regular_unit_polygon(n), 1e-9);
      if (g.edges.size() != std::size_t(n)) ok = false;
    }
    OptimizeSchedule sched;
    sched.iterations = 2000;
    auto r = optimize_unit_distances(12, 1, sched);
    bool in_range = r.best_count >= 12 && r.best_count <= 17;
    report(10, "unit counts: polygons + optimize", ok && in_range,
           "optimize12=" + std::to_string(r.best_count));
  }

  // ---- criterion 11: determinism and runtime -------------------------------
  {
    ExperimentSpec spec;
    spec.name = "det";
    spec.generator = "random-convex";
    spec.size_lo = 8;
    spec.size_hi = 14;
    spec.seeds = {3, 4};
    auto a = run_suite(spec, 4);
    auto b = run_suite(spec, 4);
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - g_t0).count();
    report(11, "deterministic reruns, <= 10 min", a.rows == b.rows && secs <= 600.0,
           "elapsed=" + std::to_string(int(secs)) + "s");
  }

  return g_failures == 0 ? 0 : 1;
}
