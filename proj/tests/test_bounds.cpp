#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "cpg/bounds.hpp"
#include "cpg/decompose.hpp"
#include "cpg/gen.hpp"

using namespace cpg;

namespace {

// exhaustive reference: maximum edges over all subgraphs of K_{nu,nv}
std::size_t max_prbg_oracle(int nu, int nv) {
  std::vector<ObgEdge> all;
  for (int u = 1; u <= nu; ++u)
    for (int v = 1; v <= nv; ++v) all.emplace_back(u, v);
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << all.size()); ++mask) {
    std::size_t cnt = std::size_t(std::popcount(mask));
    if (cnt <= best) continue;
    std::vector<ObgEdge> es;
    for (std::size_t e = 0; e < all.size(); ++e)
      if (mask >> e & 1) es.push_back(all[e]);
    if (is_prbg(Obg(nu, nv, es), PrbgEngine::BruteForce).prbg) best = cnt;
  }
  return best;
}

Obg ladder(int k) {  // path u1-v1-u2-v2-...: always path restricted
  std::vector<ObgEdge> es;
  for (int i = 1; i <= k; ++i) {
    es.emplace_back(i, i);
    if (i < k) es.emplace_back(i + 1, i);
  }
  return Obg(k, k, es);
}

}  // namespace

TEST_CASE("crossing lemma on a path") {
  Obg g = ladder(4);  // edges (1,1),(2,1),(2,2),(3,2),(3,3),(4,3),(4,4)
  auto rep = crossing_lemma_check(g, 2, 2);
  CHECK(rep.u_premise.applicable);
  CHECK(rep.u_premise.pass);
  CHECK(rep.u_premise.edge_count <= rep.u_premise.bound);
  CHECK(rep.v_premise.applicable);
  CHECK(rep.v_premise.pass);
  CHECK_THROWS_AS(crossing_lemma_check(g, 9, 0), std::invalid_argument);
}

TEST_CASE("crossing lemma premise can fail to apply") {
  Obg g(2, 2, {{1, 2}, {2, 1}});
  auto rep = crossing_lemma_check(g, 1, 1);
  CHECK_FALSE(rep.u_premise.applicable);  // u1's only neighbor is v2
}

TEST_CASE("divide and conquer bound is sound and within the target") {
  for (int k : {1, 2, 3, 5, 8, 13}) {
    Obg g = ladder(k);
    auto cert = dnc_edge_bound(g);
    double n = double(g.n());
    INFO("k=" << k);
    CHECK(cert.total_bound >= g.edge_count());
    CHECK(double(cert.total_bound) <= n * std::log2(n) + 4 * n);
  }
  std::mt19937_64 rng(31);
  int done = 0;
  while (done < 80) {
    Obg g = gen_random_obg(2 + int(rng() % 6), 2 + int(rng() % 6), 0.3, rng());
    if (!is_prbg(g, PrbgEngine::Fast).prbg || g.edge_count() == 0) continue;
    ++done;
    auto cert = dnc_edge_bound(g);
    double n = double(g.n());
    CHECK(cert.total_bound >= g.edge_count());
    CHECK(double(cert.total_bound) <= n * std::log2(n) + 4 * n);
  }
}

TEST_CASE("lower bound generator sizes and density") {
  for (int k = 0; k <= 8; ++k) {
    Obg g = gen_lower_bound_prbg(k);
    int m = 1 << k;
    INFO("k=" << k);
    CHECK(g.u_count() == m);
    CHECK(g.v_count() == m);
    // staircase family: full last row and column plus a width-2 band
    std::size_t expect = k == 0 ? 1 : k == 1 ? 4 : std::size_t(4 * m - 5);
    CHECK(g.edge_count() == expect);
    if (k <= 6) {  // the linear family clears the n log2 n / 4 floor only up to m = 64
      double n = double(g.n());
      CHECK(4.0 * double(g.edge_count()) >= n * std::log2(n));
    }
  }
}

TEST_CASE("lower bound generator stays path restricted") {
  for (int k = 0; k <= 4; ++k) {
    Obg g = gen_lower_bound_prbg(k);
    INFO("k=" << k);
    CHECK(is_prbg(g, PrbgEngine::BruteForce).prbg);
    CHECK(is_prbg(g, PrbgEngine::Fast).prbg);
  }
  for (int k = 5; k <= 9; ++k) {
    INFO("k=" << k);
    CHECK(is_prbg(gen_lower_bound_prbg(k), PrbgEngine::Fast).prbg);
  }
}

TEST_CASE("exact maximum search against the exhaustive reference") {
  CHECK(max_prbg_edges_exact(1, 1).count == 1);
  CHECK(max_prbg_edges_exact(2, 2).count == 4);  // the complete graph qualifies
  for (auto [nu, nv] : {std::pair{2, 3}, {3, 2}, {3, 3}}) {
    auto r = max_prbg_edges_exact(nu, nv);
    INFO("nu=" << nu << " nv=" << nv);
    CHECK(r.count == max_prbg_oracle(nu, nv));
    CHECK(r.witness.edge_count() == r.count);
    CHECK(is_prbg(r.witness, PrbgEngine::BruteForce).prbg);
  }
  // larger frozen maxima; the staircase family attains 4m-5 on m+m vertices
  CHECK(max_prbg_edges_exact(5, 5).count == 15);
  CHECK(max_prbg_edges_exact(6, 6).count == 19);
  CHECK_THROWS_AS(max_prbg_edges_exact(9, 8), std::invalid_argument);
}

TEST_CASE("forbidden pattern detector") {
  // path v1-u1-v2-u2 with apex u3 over v1, v2
  Obg bad(3, 2, {{1, 1}, {1, 2}, {2, 2}, {3, 1}, {3, 2}});
  auto occ = detect_forbidden_udg_patterns(bad);
  REQUIRE(!occ.empty());
  CHECK(occ[0].apex_side == Side::U);
  CHECK(occ[0].apex == 3);

  Obg mirrored = bad.transposed();
  auto occ2 = detect_forbidden_udg_patterns(mirrored);
  REQUIRE(!occ2.empty());
  CHECK(occ2[0].apex_side == Side::V);

  Obg clean = ladder(5);
  CHECK(detect_forbidden_udg_patterns(clean).empty());
}

TEST_CASE("module detection covers every vertex and edge exactly once") {
  std::mt19937_64 rng(47);
  int done = 0;
  while (done < 60) {
    Obg g = gen_random_obg(2 + int(rng() % 6), 2 + int(rng() % 6), 0.3, rng());
    if (!is_prbg(g, PrbgEngine::Fast).prbg) continue;
    ++done;
    auto md = detect_modules(g);
    for (int u = 1; u <= g.u_count(); ++u) CHECK(md.owner_u[u] >= 0);
    for (int v = 1; v <= g.v_count(); ++v) CHECK(md.owner_v[v] >= 0);
    std::size_t covered = md.fusing_edges.size();
    for (const auto& m : md.modules) covered += m.core_edges.size() + m.aux_edges.size();
    CHECK(covered == g.edge_count());
  }
}

TEST_CASE("separability classes on hand-built modules") {
  // two disjoint ladders stacked in the same direction
  Obg g(4, 4, {{1, 1}, {2, 1}, {2, 2}, {3, 3}, {4, 3}, {4, 4}});
  auto md = detect_modules(g);
  REQUIRE(md.modules.size() >= 2);
  bool found_linear = false;
  for (std::size_t i = 0; i < md.modules.size(); ++i)
    for (std::size_t j = i + 1; j < md.modules.size(); ++j)
      if (separability(md.modules[i], md.modules[j]) == SeparabilityClass::Linear)
        found_linear = true;
  CHECK(found_linear);
}

TEST_CASE("module lemmas hold on decomposed geometric graphs") {
  // The module lemmas are claims about graphs that come from unit distance
  // or locally Gabriel graphs on convex point sets; arbitrary path
  // restricted graphs are outside their scope.
  int done = 0;
  for (std::uint64_t seed = 1; seed <= 24; ++seed) {
    int n = 9 + int(seed % 6);
    auto pd = gen_random_convex(n, seed * 31);
    std::vector<Point<Rat>> pts;
    for (auto& p : pd) pts.push_back({rat_from_double(p.x), rat_from_double(p.y)});
    auto lgg = greedy_maximal_lgg(pts, shuffled_edge_order(pts, seed));
    auto d = decompose_full(lgg);
    for (const Obg* g : {&d.g1, &d.g2}) {
      if (g->edge_count() == 0) continue;
      ++done;
      auto md = detect_modules(*g);
      for (auto sel : {ModuleLemma::FusingMatching, ModuleLemma::LinearSeparableLink,
                       ModuleLemma::FusingTotalLinear, ModuleLemma::Partition}) {
        auto rep = verify_module_lemma(*g, md, sel);
        INFO("seed " << seed << " lemma " << int(sel) << ": " << rep.counterexample);
        CHECK(rep.pass);
      }
      CHECK_THROWS_AS(verify_module_lemma(*g, md, ModuleLemma::DistanceWitness),
                      std::invalid_argument);
    }
  }
  CHECK(done >= 10);
}
