#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "cpg/bounds.hpp"
#include "cpg/decompose.hpp"
#include "cpg/gen.hpp"
#include "cpg/geograph.hpp"
#include "cpg/io.hpp"
#include "cpg/obg.hpp"

namespace cpg {

// Exact rational copy of a float-mode graph; doubles convert exactly, so
// downstream combinatorial predicates evaluate the given coordinates
// without rounding.
inline GeoGraph<Rat> to_rational_graph(const GeoGraph<double>& g) {
  GeoGraph<Rat> r;
  for (const auto& p : g.points)
    r.points.push_back({rat_from_double(p.x), rat_from_double(p.y)});
  r.edges = g.edges;
  r.convex = r.points.size() >= 3 && is_convex_position(r.points);
  r.normalize();
  return r;
}

struct ExperimentSpec {
  std::string name;
  std::string generator = "regular-polygon";  // or "random-convex"
  int size_lo = 8, size_hi = 16;
  std::vector<std::uint64_t> seeds = {1};
  double tolerance = 1e-9;  // unit-distance tolerance in float mode
};

struct SuiteResult {
  std::vector<std::string> rows;  // CSV rows, header excluded
  std::size_t failures = 0;
};

namespace detail {

struct InstanceOut {
  std::vector<std::string> rows;
  std::size_t failures = 0;
};

inline double dnc_rhs(std::size_t n) {
  return n > 1 ? static_cast<double>(n) * std::log2(static_cast<double>(n)) + 4.0 * n
               : 4.0 * static_cast<double>(n);
}

inline void suite_check_graph(const ExperimentSpec& spec, const std::string& src,
                              std::size_t n, std::uint64_t seed,
                              const GeoGraph<Rat>& g, bool udg, InstanceOut& out) {
  auto row = [&](const std::string& check, long long value, long long bound, bool pass) {
    out.rows.push_back(io::csv_row(spec.name, src, n, seed, check, value, bound, pass));
    if (!pass) ++out.failures;
  };
  row(src + "_edges", static_cast<long long>(g.edges.size()), 3 * static_cast<long long>(n),
      !udg || g.edges.size() <= 3 * n);
  Decomposition<Rat> d;
  try {
    d = decompose_full(g);
  } catch (const std::exception& e) {
    row(src + "_decompose", 0, 0, false);
    return;
  }
  row(src + "_noncross_dropped", static_cast<long long>(d.noncrossing_dropped.size()),
      2 * static_cast<long long>(n), d.noncrossing_dropped.size() <= 2 * n);
  std::size_t total_dropped = d.noncrossing_dropped.size() + d.left_trimmed.size() +
                              d.right_trimmed.size();
  row(src + "_total_dropped", static_cast<long long>(total_dropped),
      3 * static_cast<long long>(n), total_dropped <= 3 * n);

  const Obg* parts[2] = {&d.g1, &d.g2};
  const std::vector<std::size_t>* umaps[2] = {&d.u_map1, &d.u_map2};
  const std::vector<std::size_t>* vmaps[2] = {&d.v_map1, &d.v_map2};
  for (int k = 0; k < 2; ++k) {
    const Obg& h = *parts[k];
    std::string p = src + "_g" + std::to_string(k + 1);
    row(p + "_prbg", 1, 1, true);  // decompose_full throws otherwise

    static const std::pair<StructureLemma, const char*> lemmas[] = {
        {StructureLemma::TreeEdges, "_tree_edges"},
        {StructureLemma::DisjointRanges, "_disjoint_ranges"},
        {StructureLemma::NeverMeet, "_never_meet"},
        {StructureLemma::SingleIncidence, "_single_incidence"}};
    for (const auto& [lem, suffix] : lemmas) {
      auto rep = verify_structure(h, lem);
      row(p + suffix, rep.pass ? 1 : 0, 1, rep.pass);
    }

    auto cert = dnc_edge_bound(h);
    bool dnc_ok = cert.total_bound >= h.edge_count() &&
                  static_cast<double>(cert.total_bound) <=
                      dnc_rhs(static_cast<std::size_t>(h.n()));
    row(p + "_dnc", static_cast<long long>(h.edge_count()),
        static_cast<long long>(cert.total_bound), dnc_ok);

    // Every separator position; aggregate row.
    std::size_t applicable = 0;
    bool crossing_ok = true;
    for (int up = 0; up <= h.u_count(); ++up)
      for (int vp = 0; vp <= h.v_count(); ++vp) {
        auto rep = crossing_lemma_check(h, up, vp);
        for (const CrossingCheck* c : {&rep.u_premise, &rep.v_premise})
          if (c->applicable) {
            ++applicable;
            crossing_ok = crossing_ok && c->pass;
          }
      }
    row(p + "_crossing", static_cast<long long>(applicable),
        static_cast<long long>(applicable), crossing_ok);

    auto occ = detect_forbidden_udg_patterns(h);
    row(p + "_patterns", static_cast<long long>(occ.size()), 0, !udg || occ.empty());

    auto md = detect_modules(h);
    static const std::pair<ModuleLemma, const char*> mlemmas[] = {
        {ModuleLemma::FusingMatching, "_fusing_matching"},
        {ModuleLemma::LinearSeparableLink, "_linear_link"},
        {ModuleLemma::FusingTotalLinear, "_fusing_total"},
        {ModuleLemma::Partition, "_partition"}};
    for (const auto& [lem, suffix] : mlemmas) {
      auto rep = verify_module_lemma(h, md, lem);
      long long value = lem == ModuleLemma::FusingTotalLinear
                            ? static_cast<long long>(md.fusing_edges.size())
                            : (rep.pass ? 1 : 0);
      long long bound = lem == ModuleLemma::FusingTotalLinear
                            ? 2 * static_cast<long long>(h.n())
                            : 1;
      row(p + suffix, value, bound, rep.pass);
    }
    auto dw = verify_module_lemma(h, md, ModuleLemma::DistanceWitness, g, *umaps[k],
                                  *vmaps[k]);
    row(p + "_distance_witness", dw.pass ? 1 : 0, 1, dw.pass);
  }
}

inline InstanceOut run_instance(const ExperimentSpec& spec, int n, std::uint64_t seed) {
  InstanceOut out;
  std::vector<Point<double>> pts;
  if (spec.generator == "regular-polygon")
    pts = gen_regular_unit_polygon(n);
  else if (spec.generator == "random-convex")
    pts = gen_random_convex(n, seed);
  else
    throw std::invalid_argument("run_suite: unknown generator " + spec.generator);

  auto udg_d = build_udg(pts, spec.tolerance);
  auto udg = to_rational_graph(udg_d);
  if (!udg.edges.empty())
    suite_check_graph(spec, "udg", static_cast<std::size_t>(n), seed, udg, true, out);

  std::vector<Point<Rat>> rpts;
  for (const auto& p : pts) rpts.push_back({rat_from_double(p.x), rat_from_double(p.y)});
  auto lgg = greedy_maximal_lgg(rpts, shuffled_edge_order(rpts, seed));
  suite_check_graph(spec, "lgg", static_cast<std::size_t>(n), seed, lgg, false, out);
  return out;
}

}  // namespace detail

// Fans instances out to a worker pool; rows are merged in (size, seed)
// order, so output is independent of scheduling.
inline SuiteResult run_suite(const ExperimentSpec& spec, unsigned workers = 0) {
  std::vector<std::pair<int, std::uint64_t>> instances;
  for (int n = spec.size_lo; n <= spec.size_hi; ++n)
    for (std::uint64_t s : spec.seeds) instances.emplace_back(n, s);
  std::vector<detail::InstanceOut> outs(instances.size());
  if (workers == 0)
    workers = std::max(1u, std::min(4u, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= instances.size()) break;
      outs[i] = detail::run_instance(spec, instances[i].first, instances[i].second);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  SuiteResult res;
  for (const auto& o : outs) {
    res.rows.insert(res.rows.end(), o.rows.begin(), o.rows.end());
    res.failures += o.failures;
  }
  return res;
}

}  // namespace cpg
