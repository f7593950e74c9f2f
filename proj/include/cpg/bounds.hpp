#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "cpg/geograph.hpp"
#include "cpg/obg.hpp"

namespace cpg {

// ---------------------------------------------------------------------------
// Crossing lemma check.
// ---------------------------------------------------------------------------

struct CrossingCheck {
  bool applicable = false;  // premise held; only then pass is meaningful
  bool pass = false;
  std::size_t edge_count = 0;
  std::size_t bound = 0;
};

struct CrossingReport {
  CrossingCheck u_premise;  // every U1 vertex has a V1 neighbor: |E(U1,V2)| <= |U1|+|V2|
  CrossingCheck v_premise;  // every V1 vertex has a U1 neighbor: |E(V1,U2)| <= |V1|+|U2|
};

// Separator (u_pos, v_pos): U1 = {1..u_pos}, V1 = {1..v_pos}.
inline CrossingReport crossing_lemma_check(const Obg& g, int u_pos, int v_pos) {
  if (u_pos < 0 || u_pos > g.u_count() || v_pos < 0 || v_pos > g.v_count())
    throw std::invalid_argument("crossing_lemma_check: separator out of range");
  if (!is_prbg(g, PrbgEngine::Fast).prbg)
    throw std::invalid_argument("crossing_lemma_check: graph is not a PRBG");
  CrossingReport rep;
  {
    bool premise = true;
    for (int u = 1; u <= u_pos && premise; ++u) {
      const auto& nb = g.neighbors_of_u(u);
      premise = !nb.empty() && nb.front() <= v_pos;
    }
    if (premise) {
      std::size_t cnt = 0;
      for (int u = 1; u <= u_pos; ++u)
        for (int v : g.neighbors_of_u(u))
          if (v > v_pos) ++cnt;
      rep.u_premise.applicable = true;
      rep.u_premise.edge_count = cnt;
      rep.u_premise.bound =
          static_cast<std::size_t>(u_pos) + static_cast<std::size_t>(g.v_count() - v_pos);
      rep.u_premise.pass = cnt <= rep.u_premise.bound;
    }
  }
  {
    bool premise = true;
    for (int v = 1; v <= v_pos && premise; ++v) {
      const auto& nb = g.neighbors_of_v(v);
      premise = !nb.empty() && nb.front() <= u_pos;
    }
    if (premise) {
      std::size_t cnt = 0;
      for (int v = 1; v <= v_pos; ++v)
        for (int u : g.neighbors_of_v(v))
          if (u > u_pos) ++cnt;
      rep.v_premise.applicable = true;
      rep.v_premise.edge_count = cnt;
      rep.v_premise.bound =
          static_cast<std::size_t>(v_pos) + static_cast<std::size_t>(g.u_count() - u_pos);
      rep.v_premise.pass = cnt <= rep.v_premise.bound;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Divide-and-conquer edge bound certificate.
// ---------------------------------------------------------------------------

struct DncStep {
  int depth = 0;
  std::size_t n = 0;           // vertices in this call
  std::size_t s1 = 0, s2 = 0;  // partition sizes (before terminal drop)
  std::size_t crossing_charge = 0;
  std::size_t terminals = 0;
};

struct BoundCertificate {
  std::size_t total_bound = 0;
  std::vector<DncStep> trace;
};

namespace detail {

struct DncSub {
  std::vector<int> us, vs;  // original indices, ascending
};

inline std::size_t dnc_edges(const Obg& g, const DncSub& s) {
  std::vector<char> inv(g.v_count() + 1, 0);
  for (int v : s.vs) inv[v] = 1;
  std::size_t m = 0;
  for (int u : s.us)
    for (int v : g.neighbors_of_u(u))
      if (inv[v]) ++m;
  return m;
}

inline std::size_t dnc_recurse(const Obg& g, const DncSub& s, int depth,
                               BoundCertificate& cert) {
  std::size_t m = dnc_edges(g, s);
  if (m == 0) return 0;
  std::size_t n = s.us.size() + s.vs.size();
  if (n <= 2) {
    cert.trace.push_back({depth, n, n, 0, 0, 0});
    return s.us.size() * s.vs.size();
  }
  std::vector<char> inu(g.u_count() + 1, 0), inv(g.v_count() + 1, 0);
  for (int u : s.us) inu[u] = 1;
  for (int v : s.vs) inv[v] = 1;

  // Scan V ascending, pulling each v and its U-neighbors into S1 until S1
  // holds at least half the vertices.
  std::vector<char> s1u(g.u_count() + 1, 0), s1v(g.v_count() + 1, 0);
  std::size_t s1_size = 0;
  std::vector<int> last_added_u;
  int last_v = 0;
  for (int v : s.vs) {
    last_added_u.clear();
    last_v = v;
    s1v[v] = 1;
    ++s1_size;
    for (int u : g.neighbors_of_v(v))
      if (inu[u] && !s1u[u]) {
        s1u[u] = 1;
        ++s1_size;
        last_added_u.push_back(u);
      }
    if (2 * s1_size >= n) break;
  }

  // Terminal vertices: vertices added by the final scan step whose degree
  // inside S1 is exactly 1.
  auto s1_degree = [&](const Vtx& x) {
    std::size_t d = 0;
    for (int nb : g.neighbors(x)) {
      bool in_s1 = x.side == Side::U ? (inv[nb] && s1v[nb]) : (inu[nb] && s1u[nb]);
      if (in_s1) ++d;
    }
    return d;
  };
  std::vector<Vtx> terminals;
  if (last_v != 0 && s1_degree(vv(last_v)) == 1) terminals.push_back(vv(last_v));
  for (int u : last_added_u)
    if (s1_degree(uv(u)) == 1) terminals.push_back(uv(u));

  DncSub sub1, sub2;
  for (int u : s.us) {
    bool term = std::find(terminals.begin(), terminals.end(), uv(u)) != terminals.end();
    if (s1u[u] && !term)
      sub1.us.push_back(u);
    else if (!s1u[u])
      sub2.us.push_back(u);
  }
  for (int v : s.vs) {
    bool term = std::find(terminals.begin(), terminals.end(), vv(v)) != terminals.end();
    if (s1v[v] && !term)
      sub1.vs.push_back(v);
    else if (!s1v[v])
      sub2.vs.push_back(v);
  }

  // Soundness of the per-level charge: actual S1/S2 crossing edges must not
  // exceed n-1 (crossing lemma consequence).
  std::size_t crossing = 0;
  for (int u : s.us)
    for (int v : g.neighbors_of_u(u))
      if (inv[v] && (s1u[u] != 0) != (s1v[v] != 0)) ++crossing;
  if (crossing > n - 1)
    throw std::logic_error("dnc_edge_bound: crossing edges exceed the n-1 charge");

  cert.trace.push_back({depth, n, s1_size, n - s1_size, n - 1, terminals.size()});

  std::size_t no_progress =
      sub1.us.size() + sub1.vs.size() == n || sub2.us.size() + sub2.vs.size() == n;
  if (no_progress) return m;  // exact fallback, still an upper bound

  return (n - 1) + terminals.size() + dnc_recurse(g, sub1, depth + 1, cert) +
         dnc_recurse(g, sub2, depth + 1, cert);
}

}  // namespace detail

inline BoundCertificate dnc_edge_bound(const Obg& g) {
  if (!is_prbg(g, PrbgEngine::Fast).prbg)
    throw std::invalid_argument("dnc_edge_bound: graph is not a PRBG");
  detail::DncSub all;
  for (int u = 1; u <= g.u_count(); ++u) all.us.push_back(u);
  for (int v = 1; v <= g.v_count(); ++v) all.vs.push_back(v);
  BoundCertificate cert;
  cert.total_bound = detail::dnc_recurse(g, all, 0, cert);
  if (cert.total_bound < g.edge_count())
    throw std::logic_error("dnc_edge_bound: certificate below actual edge count");
  return cert;
}

// ---------------------------------------------------------------------------
// Dense generator: the anti-diagonal staircase family. Exact search returns
// exactly this shape as the maximum for every side size it can reach, and
// the family stays verifier-clean at every scale we can test, so it is the
// densest construction we know of.
// ---------------------------------------------------------------------------

namespace detail {

// Full last row, full last column, and a width-2 anti-diagonal band through
// the remaining block. Square sizes m >= 3 give 4m - 5 edges.
inline Obg staircase_obg(int a, int b) {
  if (a < 1 || b < 1) throw std::invalid_argument("staircase_obg: empty side");
  if (a == 1 || b == 1) {
    std::vector<ObgEdge> es;
    for (int u = 1; u <= a; ++u)
      for (int v = 1; v <= b; ++v) es.emplace_back(u, v);
    return Obg(a, b, std::move(es));
  }
  if (a == 2 && b == 2) return Obg(2, 2, {{1, 1}, {1, 2}, {2, 1}, {2, 2}});
  std::vector<ObgEdge> es;
  for (int v = 1; v < b; ++v) es.emplace_back(a, v);
  for (int u = 1; u < a; ++u) es.emplace_back(u, b);
  for (int i = 1; i <= a - 1; ++i)
    for (int j : {b - 1 - i, b - i})
      if (j >= 1 && j <= b - 1) es.emplace_back(i, j);
  return Obg(a, b, std::move(es));
}

}  // namespace detail

inline Obg gen_lower_bound_prbg(int k) {
  if (k < 0 || k > 12)
    throw std::invalid_argument("gen_lower_bound_prbg: k must be in [0, 12]");
  int m = 1 << k;
  return detail::staircase_obg(m, m);
}

// ---------------------------------------------------------------------------
// Exact maximum edge count over all PRBGs with given side sizes.
// ---------------------------------------------------------------------------

struct MaxPrbgResult {
  std::size_t count = 0;
  Obg witness;
};

namespace detail {

// One orientation of the witness-free violation test, evaluated directly on
// neighbourhood bitmasks (cols[j] = U-mask of column j, rows[u] = V-mask of
// row u). Mirrors feasible_u_corner; the other orientation is the same call
// with the two mask families swapped.
inline bool prbg_feasible_masks(int C, const std::uint32_t* cols,
                                const std::uint32_t* rows) {
  int tu[17][17];  // reach toward high U per present edge (column, u)
  int agg[17] = {0};
  for (int v = C; v >= 1; --v) {
    std::uint32_t m = cols[v];
    for (std::uint32_t b = m; b; b &= b - 1) {
      int u = std::countr_zero(b) + 1;
      tu[v][u] = std::max(u, agg[u]);
    }
    int run = 0;
    for (std::uint32_t b = m; b;) {
      int u = 32 - std::countl_zero(b);  // highest set bit, 1-based
      b &= ~(std::uint32_t(1) << (u - 1));
      int tv = run;
      run = std::max(run, tu[v][u]);
      agg[u] = std::max(agg[u], tv);
    }
  }
  auto range = [](int lo, int hi) {  // bitmask of u in (lo, hi]
    return (std::uint32_t(1) << hi) - (std::uint32_t(1) << lo);
  };
  for (int vc = 1; vc <= C; ++vc) {
    std::uint32_t m = cols[vc];
    if (!m) continue;
    int umin = std::countr_zero(m) + 1;
    for (std::uint32_t b = m & (m - 1); b; b &= b - 1) {  // shape B
      int s = std::countr_zero(b) + 1;
      if (umin >= s) continue;
      int reach = tu[vc][s];
      if (reach > s && (m & range(s, reach))) return false;
    }
    for (std::uint32_t b = m; b; b &= b - 1) {  // shape A
      int ua = std::countr_zero(b) + 1;
      for (std::uint32_t rb = rows[ua] >> vc; rb; rb &= rb - 1) {
        int vp = std::countr_zero(rb) + 1 + vc;
        for (std::uint32_t sb = cols[vp] >> ua; sb; sb &= sb - 1) {
          int s = std::countr_zero(sb) + 1 + ua;
          int reach = tu[vp][s];
          if (reach > s && (m & range(s, reach))) return false;
        }
      }
    }
  }
  return true;
}

struct MaxPrbgSearch {
  int nu = 0;
  std::vector<std::uint32_t> masks;       // nonzero, by decreasing popcount
  std::vector<std::size_t> table;         // exact max for (nu, c)

  explicit MaxPrbgSearch(int nu_) : nu(nu_) {
    for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << nu); ++mask)
      masks.push_back(mask);
    std::sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
      int pa = std::popcount(a), pb = std::popcount(b);
      return pa != pb ? pa > pb : a < b;
    });
    table.push_back(0);
  }

  // DFS over the columns of a width-c graph with every column nonempty
  // (graphs with an empty column are covered by table[c-1]). Pruning: any
  // column of any completion stays feasible as a single extension of the
  // current prefix, so once the first (largest) feasible mask at a node is
  // known, its popcount caps every mask below that node.
  template <class Visit>
  void dfs(int c, int col, std::size_t cnt, int m1cap, std::uint32_t* cols,
           std::uint32_t* rows, std::atomic<std::size_t>& best,
           Visit&& visit) const {
    if (col > c) {
      visit(cnt, cols);
      return;
    }
    int r = c - col + 1;
    int m1 = -1;
    for (std::uint32_t mask : masks) {
      int pop = std::popcount(mask);
      if (pop > m1cap) continue;
      std::size_t cap = std::size_t(m1 < 0 ? pop : m1);
      std::size_t fut = std::min(table[r - 1], cap * std::size_t(r - 1));
      if (cnt + std::size_t(pop) + fut <= best.load(std::memory_order_relaxed))
        break;
      cols[col] = mask;
      for (std::uint32_t b = mask; b; b &= b - 1)
        rows[std::countr_zero(b) + 1] |= std::uint32_t(1) << (col - 1);
      if (prbg_feasible_masks(c, cols, rows) &&
          prbg_feasible_masks(nu, rows, cols)) {
        if (m1 < 0) m1 = pop;
        dfs(c, col + 1, cnt + pop, m1, cols, rows, best, visit);
      }
      for (std::uint32_t b = mask; b; b &= b - 1)
        rows[std::countr_zero(b) + 1] &= ~(std::uint32_t(1) << (col - 1));
      cols[col] = 0;
    }
  }

  std::size_t staircase_count(int c, std::uint32_t* cols, std::uint32_t* rows) const {
    Obg seed = staircase_obg(nu, c);
    std::fill(cols, cols + c + 1, 0u);
    std::fill(rows, rows + nu + 1, 0u);
    for (const auto& [u, v] : seed.edges()) {
      cols[v] |= std::uint32_t(1) << (u - 1);
      rows[u] |= std::uint32_t(1) << (v - 1);
    }
    if (prbg_feasible_masks(c, cols, rows) && prbg_feasible_masks(nu, rows, cols))
      return seed.edge_count();
    return 0;
  }
};

}  // namespace detail

// Column-wise branch and bound over neighbourhood bitmasks: V vertices are
// filled in ascending order, pruned by incremental verification (a V-prefix
// of a PRBG is a PRBG), by the exact table for the remaining column count,
// and by the single-extension popcount cap (the property is closed under
// edge deletion). The maximum is computed with a thread pool over the first
// column; the witness is then re-derived sequentially with the bound pinned
// to max-1, so results are deterministic regardless of scheduling.
inline MaxPrbgResult max_prbg_edges_exact(int nu, int nv) {
  if (nu < 1 || nv < 1) throw std::invalid_argument("max_prbg_edges_exact: empty side");
  if (nu + nv > 16)
    throw std::invalid_argument("max_prbg_edges_exact: guarded to 16 vertices");
  detail::MaxPrbgSearch search(nu);

  for (int c = 1; c <= nv; ++c) {
    std::uint32_t cols[17] = {0}, rows[17] = {0};
    std::atomic<std::size_t> best{search.table[c - 1]};
    std::size_t seed = search.staircase_count(c, cols, rows);
    if (seed > best) best = seed;

    unsigned threads = std::min(4u, std::max(1u, std::thread::hardware_concurrency()));
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      std::uint32_t wc[17] = {0}, wr[17] = {0};
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= search.masks.size()) return;
        std::uint32_t mask = search.masks[i];
        int pop = std::popcount(mask);
        // a full single column is always feasible, so the extension cap at
        // the root is nu and the future bound is just the width table
        if (std::size_t(pop) + search.table[c - 1] <= best.load()) continue;
        std::fill(wc, wc + c + 1, 0u);
        std::fill(wr, wr + nu + 1, 0u);
        wc[1] = mask;
        for (std::uint32_t b = mask; b; b &= b - 1) wr[std::countr_zero(b) + 1] = 1u;
        if (!detail::prbg_feasible_masks(c, wc, wr) ||
            !detail::prbg_feasible_masks(nu, wr, wc))
          continue;
        search.dfs(c, 2, std::size_t(pop), nu, wc, wr, best,
                   [&](std::size_t cnt, const std::uint32_t*) {
                     std::size_t prev = best.load();
                     while (cnt > prev && !best.compare_exchange_weak(prev, cnt)) {
                     }
                   });
      }
    };
    if (threads <= 1 || c <= 2) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
    search.table.push_back(best.load());
  }

  // Deterministic witness pass: first leaf attaining the known maximum.
  MaxPrbgResult r;
  r.count = search.table[nv];
  {
    std::uint32_t cols[17] = {0}, rows[17] = {0};
    std::size_t seed = search.staircase_count(nv, cols, rows);
    std::vector<ObgEdge> edges;
    if (seed == r.count) {
      for (int v = 1; v <= nv; ++v)
        for (std::uint32_t b = cols[v]; b; b &= b - 1)
          edges.emplace_back(std::countr_zero(b) + 1, v);
    } else {
      std::fill(cols, cols + nv + 1, 0u);
      std::fill(rows, rows + nu + 1, 0u);
      std::atomic<std::size_t> floor{r.count - 1};
      // the maximum needs every column nonempty unless a narrower width ties
      int cw = nv;
      while (cw > 1 && search.table[cw - 1] == r.count) --cw;
      struct FirstHit {};
      try {
        search.dfs(cw, 1, 0, nu, cols, rows, floor,
                   [&](std::size_t cnt, const std::uint32_t* leaf) {
                     if (cnt != r.count) return;
                     for (int v = 1; v <= cw; ++v)
                       for (std::uint32_t b = leaf[v]; b; b &= b - 1)
                         edges.emplace_back(std::countr_zero(b) + 1, v);
                     throw FirstHit{};
                   });
      } catch (const FirstHit&) {
      }
    }
    r.witness = Obg(nu, nv, edges);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Forbidden patterns (members of the LGG-derived class that cannot arise
// from unit distance graphs).
// ---------------------------------------------------------------------------

struct PatternOccurrence {
  Side apex_side;  // U: two path V-vertices share a high U apex; V: mirrored
  VtxSeq path;     // the 4-vertex forward path used in the embedding
  int apex = 0;
};

// Pattern (apex in U): forward path v1-u1-v2-u2 plus u* > u2 adjacent to
// both v1 and v2. Pattern (apex in V) is the transpose. Longer-path
// embeddings always contain a 4-vertex one, so only those are enumerated.
inline std::vector<PatternOccurrence> detect_forbidden_udg_patterns(
    const Obg& g, std::size_t cap = 100) {
  std::vector<PatternOccurrence> out;
  auto scan = [&](const Obg& h, Side apex_side, auto&& mk) {
    for (int v1 = 1; v1 <= h.v_count() && out.size() < cap; ++v1)
      for (int u1 : h.neighbors_of_v(v1)) {
        for (int v2 : h.neighbors_of_u(u1)) {
          if (v2 <= v1) continue;
          for (int u2 : h.neighbors_of_v(v2)) {
            if (u2 <= u1) continue;
            for (int apex : h.neighbors_of_v(v1)) {
              if (apex <= u2) continue;
              if (!h.has_edge(apex, v2)) continue;
              out.push_back(mk(v1, u1, v2, u2, apex));
              if (out.size() >= cap) return;
            }
          }
        }
        if (out.size() >= cap) return;
      }
  };
  scan(g, Side::U, [](int v1, int u1, int v2, int u2, int apex) {
    return PatternOccurrence{Side::U, {vv(v1), uv(u1), vv(v2), uv(u2)}, apex};
  });
  Obg t = g.transposed();
  scan(t, Side::V, [](int v1, int u1, int v2, int u2, int apex) {
    // Transposed back: the path lives on swapped sides.
    return PatternOccurrence{Side::V, {uv(v1), vv(u1), uv(v2), vv(u2)}, apex};
  });
  return out;
}

// ---------------------------------------------------------------------------
// Modules.
// ---------------------------------------------------------------------------

struct ModuleRecord {
  Vtx root;                          // v0 (or a degenerate single-U root)
  int u0 = 0;                        // least-order core U vertex, 0 if none
  MonotoneTree core;                 // T_l(root) within the remaining graph
  std::vector<ObgEdge> core_edges;   // edges induced on core vertices
  std::vector<ObgEdge> aux_edges;    // one endpoint core, one auxiliary
  std::vector<Vtx> aux_vertices;
};

struct ModuleDecomposition {
  std::vector<ModuleRecord> modules;
  std::vector<ObgEdge> fusing_edges;  // inter-module pool
  std::vector<int> owner_u, owner_v;  // 1-based vertex -> module index
};

// Greedy module detection: repeatedly root a leftward tree at the
// highest-order unassigned V vertex, absorb edges incident to its core,
// and push everything between modules into the fusing pool.
inline ModuleDecomposition detect_modules(const Obg& g) {
  if (!is_prbg(g, PrbgEngine::Fast).prbg)
    throw std::invalid_argument("detect_modules: graph is not a PRBG");
  ModuleDecomposition md;
  md.owner_u.assign(g.u_count() + 1, -1);
  md.owner_v.assign(g.v_count() + 1, -1);
  std::vector<char> edge_done(g.edge_count(), 0);
  std::vector<char> free_u(g.u_count() + 1, 1), free_v(g.v_count() + 1, 1);
  for (int v0 = g.v_count(); v0 >= 1; --v0) {
    if (!free_v[v0]) continue;
    int idx = static_cast<int>(md.modules.size());
    ModuleRecord rec;
    rec.root = vv(v0);
    rec.core = monotone_tree_masked(g, rec.root, Direction::Leftward, free_u, free_v);
    std::vector<char> in_core_u(g.u_count() + 1, 0), in_core_v(g.v_count() + 1, 0);
    for (const Vtx& x : rec.core.vertices) {
      if (x.side == Side::U) {
        in_core_u[x.idx] = 1;
        free_u[x.idx] = 0;
        md.owner_u[x.idx] = idx;
        if (rec.u0 == 0 || x.idx < rec.u0) rec.u0 = x.idx;
      } else {
        in_core_v[x.idx] = 1;
        free_v[x.idx] = 0;
        md.owner_v[x.idx] = idx;
      }
    }
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
      if (edge_done[e]) continue;
      auto [u, v] = g.edges()[e];
      bool cu = in_core_u[u] != 0, cv = in_core_v[v] != 0;
      if (!cu && !cv) continue;
      edge_done[e] = 1;
      if (cu && cv) {
        rec.core_edges.emplace_back(u, v);
      } else if (cu) {
        if (free_v[v]) {
          free_v[v] = 0;
          md.owner_v[v] = idx;
          rec.aux_vertices.push_back(vv(v));
          rec.aux_edges.emplace_back(u, v);
        } else {
          md.fusing_edges.emplace_back(u, v);
        }
      } else {
        if (free_u[u]) {
          free_u[u] = 0;
          md.owner_u[u] = idx;
          rec.aux_vertices.push_back(uv(u));
          rec.aux_edges.emplace_back(u, v);
        } else {
          md.fusing_edges.emplace_back(u, v);
        }
      }
    }
    md.modules.push_back(std::move(rec));
  }
  // Unreached U vertices become degenerate single-vertex modules.
  for (int u = 1; u <= g.u_count(); ++u) {
    if (!free_u[u]) continue;
    int idx = static_cast<int>(md.modules.size());
    ModuleRecord rec;
    rec.root = uv(u);
    rec.u0 = u;
    rec.core = monotone_tree_masked(g, rec.root, Direction::Leftward, free_u, free_v);
    free_u[u] = 0;
    md.owner_u[u] = idx;
    md.modules.push_back(std::move(rec));
  }
  // Whatever never touched a core (auxiliary-to-auxiliary edges) joins the pool.
  for (std::size_t e = 0; e < g.edges().size(); ++e)
    if (!edge_done[e]) md.fusing_edges.push_back(g.edges()[e]);
  std::sort(md.fusing_edges.begin(), md.fusing_edges.end());
  return md;
}

inline std::vector<Vtx> module_vertices(const ModuleRecord& m) {
  std::vector<Vtx> xs = m.core.vertices;
  xs.insert(xs.end(), m.aux_vertices.begin(), m.aux_vertices.end());
  return xs;
}

// ---------------------------------------------------------------------------
// Separability.
// ---------------------------------------------------------------------------

enum class SeparabilityClass { Linear, PartialLinear, Cross, Overlapping };

namespace detail {

// Observed order relations between two vertex sets on one side:
// bit 1 = some a < b, bit 2 = some a > b.
inline int order_relation(const std::vector<int>& a, const std::vector<int>& b) {
  int rel = 0;
  for (int x : a)
    for (int y : b) rel |= x < y ? 1 : 2;
  return rel;
}

inline void split_sides(const std::vector<Vtx>& xs, std::vector<int>& us,
                        std::vector<int>& vs) {
  for (const Vtx& x : xs) (x.side == Side::U ? us : vs).push_back(x.idx);
}

inline bool consistent(int rel_u, int rel_v, bool same_direction) {
  for (int d : {1, 2}) {
    int e = same_direction ? d : (d == 1 ? 2 : 1);
    if ((rel_u == 0 || rel_u == d) && (rel_v == 0 || rel_v == e)) return true;
  }
  return false;
}

}  // namespace detail

inline SeparabilityClass separability(const ModuleRecord& a, const ModuleRecord& b) {
  std::vector<int> au, av, bu, bv, acu, acv, bcu, bcv;
  detail::split_sides(module_vertices(a), au, av);
  detail::split_sides(module_vertices(b), bu, bv);
  detail::split_sides(a.core.vertices, acu, acv);
  detail::split_sides(b.core.vertices, bcu, bcv);
  for (int x : au)
    if (std::find(bu.begin(), bu.end(), x) != bu.end())
      throw std::invalid_argument("separability: modules share a U vertex");
  for (int x : av)
    if (std::find(bv.begin(), bv.end(), x) != bv.end())
      throw std::invalid_argument("separability: modules share a V vertex");
  int ru = detail::order_relation(au, bu), rv = detail::order_relation(av, bv);
  if (detail::consistent(ru, rv, true)) return SeparabilityClass::Linear;
  if (detail::consistent(ru, rv, false)) return SeparabilityClass::Cross;
  int rcu = detail::order_relation(acu, bu), rcv = detail::order_relation(acv, bv);
  if (detail::consistent(rcu, rcv, true)) return SeparabilityClass::PartialLinear;
  int rub = detail::order_relation(bcu, au), rvb = detail::order_relation(bcv, av);
  if (detail::consistent(rub, rvb, true)) return SeparabilityClass::PartialLinear;
  return SeparabilityClass::Overlapping;
}

// ---------------------------------------------------------------------------
// Module lemma verification.
// ---------------------------------------------------------------------------

enum class ModuleLemma {
  FusingMatching,
  LinearSeparableLink,
  FusingTotalLinear,
  Partition,
  DistanceWitness
};

struct ModuleLemmaReport {
  bool pass = true;
  std::string counterexample;
  double constant = 0.0;  // reported ratio where applicable
};

namespace detail {

// Compact OBG over an explicit edge subset, preserving relative orders.
struct SubObg {
  Obg graph;
  std::vector<int> u_ids, v_ids;  // 1-based sub index -> original index
};

inline SubObg make_sub_obg(const std::vector<ObgEdge>& edges) {
  std::vector<int> us, vs;
  for (const auto& [u, v] : edges) {
    us.push_back(u);
    vs.push_back(v);
  }
  std::sort(us.begin(), us.end());
  us.erase(std::unique(us.begin(), us.end()), us.end());
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  auto pos = [](const std::vector<int>& xs, int x) {
    return static_cast<int>(std::lower_bound(xs.begin(), xs.end(), x) - xs.begin()) + 1;
  };
  std::vector<ObgEdge> mapped;
  for (const auto& [u, v] : edges) mapped.emplace_back(pos(us, u), pos(vs, v));
  SubObg s;
  s.graph = Obg(static_cast<int>(us.size()), static_cast<int>(vs.size()), mapped);
  s.u_ids.assign(us.size() + 1, 0);
  s.v_ids.assign(vs.size() + 1, 0);
  for (std::size_t i = 0; i < us.size(); ++i) s.u_ids[i + 1] = us[i];
  for (std::size_t i = 0; i < vs.size(); ++i) s.v_ids[i + 1] = vs[i];
  return s;
}

// True when some root spans the whole edge set as a leftward monotone tree.
inline bool is_leftward_tree_component(const std::vector<ObgEdge>& edges) {
  if (edges.empty()) return true;
  SubObg s = make_sub_obg(edges);
  std::size_t nverts = s.u_ids.size() - 1 + s.v_ids.size() - 1;
  std::vector<Vtx> roots;
  for (int u = 1; u < static_cast<int>(s.u_ids.size()); ++u) roots.push_back(uv(u));
  for (int v = 1; v < static_cast<int>(s.v_ids.size()); ++v) roots.push_back(vv(v));
  for (const Vtx& r : roots) {
    auto t = monotone_tree(s.graph, r, Direction::Leftward);
    if (!t.meet && t.vertices.size() == nverts && t.edges.size() == edges.size())
      return true;
  }
  return false;
}

// Connected components of an edge list, as edge sublists.
inline std::vector<std::vector<ObgEdge>> edge_components(
    const std::vector<ObgEdge>& edges) {
  std::vector<std::vector<ObgEdge>> comps;
  std::vector<char> done(edges.size(), 0);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (done[i]) continue;
    std::vector<ObgEdge> comp{edges[i]};
    done[i] = 1;
    for (std::size_t scan = 0; scan < comp.size(); ++scan) {
      ObgEdge cur = comp[scan];
      for (std::size_t j = 0; j < edges.size(); ++j) {
        if (done[j]) continue;
        if (edges[j].first == cur.first || edges[j].second == cur.second) {
          comp.push_back(edges[j]);
          done[j] = 1;
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

inline bool vtx_in(const std::vector<Vtx>& xs, const Vtx& x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

}  // namespace detail

inline ModuleLemmaReport verify_module_lemma(const Obg& g,
                                             const ModuleDecomposition& md,
                                             ModuleLemma sel) {
  ModuleLemmaReport rep;
  auto fail = [&](std::string why) {
    rep.pass = false;
    rep.counterexample = std::move(why);
    return rep;
  };
  auto owner = [&](const Vtx& x) {
    return x.side == Side::U ? md.owner_u[x.idx] : md.owner_v[x.idx];
  };
  switch (sel) {
    case ModuleLemma::FusingMatching: {
      for (std::size_t i = 0; i < md.modules.size(); ++i)
        for (std::size_t j = i + 1; j < md.modules.size(); ++j) {
          if (separability(md.modules[i], md.modules[j]) != SeparabilityClass::Cross)
            continue;
          // Degree of every vertex within the fusing edges joining i and j;
          // degree >= 2 is excused only when all opposite endpoints are core
          // vertices of the other module.
          auto check_side = [&](bool from_u) -> std::optional<std::string> {
            std::vector<std::pair<Vtx, Vtx>> pairs;  // (endpoint, opposite)
            for (const auto& [u, v] : md.fusing_edges) {
              int ou = md.owner_u[u], ov = md.owner_v[v];
              bool between = (ou == static_cast<int>(i) && ov == static_cast<int>(j)) ||
                             (ou == static_cast<int>(j) && ov == static_cast<int>(i));
              if (!between) continue;
              if (from_u)
                pairs.emplace_back(uv(u), vv(v));
              else
                pairs.emplace_back(vv(v), uv(u));
            }
            std::sort(pairs.begin(), pairs.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            for (std::size_t a = 0; a < pairs.size();) {
              std::size_t b = a;
              while (b < pairs.size() && pairs[b].first == pairs[a].first) ++b;
              if (b - a >= 2) {
                const auto& other =
                    md.modules[static_cast<std::size_t>(owner(pairs[a].second))];
                for (std::size_t k = a; k < b; ++k)
                  if (!detail::vtx_in(other.core.vertices, pairs[k].second))
                    return "vertex " + to_string(pairs[a].first) +
                           " has multiple fusing edges not all into core vertices";
              }
              a = b;
            }
            return std::nullopt;
          };
          if (auto why = check_side(true)) return fail(*why);
          if (auto why = check_side(false)) return fail(*why);
        }
      return rep;
    }
    case ModuleLemma::LinearSeparableLink: {
      for (std::size_t i = 0; i < md.modules.size(); ++i)
        for (std::size_t j = 0; j < md.modules.size(); ++j) {
          if (i == j) continue;
          auto cls = separability(md.modules[i], md.modules[j]);
          if (cls != SeparabilityClass::Linear && cls != SeparabilityClass::PartialLinear)
            continue;
          // i must be the lower module.
          std::vector<int> iu, iv, ju, jv;
          detail::split_sides(module_vertices(md.modules[i]), iu, iv);
          detail::split_sides(module_vertices(md.modules[j]), ju, jv);
          int ru = detail::order_relation(iu, ju), rv = detail::order_relation(iv, jv);
          if ((ru | rv) & 2) continue;  // not uniformly lower
          std::vector<Vtx> carriers;
          for (const auto& [u, v] : md.fusing_edges) {
            int ou = md.owner_u[u], ov = md.owner_v[v];
            if (ou == static_cast<int>(i) && ov == static_cast<int>(j)) {
              if (!detail::vtx_in(carriers, uv(u))) carriers.push_back(uv(u));
            } else if (ov == static_cast<int>(i) && ou == static_cast<int>(j)) {
              if (!detail::vtx_in(carriers, vv(v))) carriers.push_back(vv(v));
            }
          }
          if (carriers.size() > 1)
            return fail("modules " + std::to_string(i) + "," + std::to_string(j) +
                        ": " + std::to_string(carriers.size()) +
                        " lower-module vertices carry linking edges");
        }
      return rep;
    }
    case ModuleLemma::FusingTotalLinear: {
      rep.constant =
          g.n() == 0 ? 0.0
                     : static_cast<double>(md.fusing_edges.size()) / static_cast<double>(g.n());
      if (md.fusing_edges.size() > 2 * static_cast<std::size_t>(g.n()))
        return fail("fusing edges exceed 2n: " + std::to_string(md.fusing_edges.size()));
      return rep;
    }
    case ModuleLemma::Partition: {
      for (const auto& mod : md.modules) {
        std::vector<int> cu, cv;
        detail::split_sides(mod.core.vertices, cu, cv);
        std::sort(cu.begin(), cu.end());
        std::sort(cv.begin(), cv.end());
        // Partition lines respect the cross-separated layout of the forward
        // paths of a left tree: one side is low-U plus high-V.
        for (std::size_t a = 0; a <= cu.size(); ++a)
          for (std::size_t b = 0; b <= cv.size(); ++b) {
            int ucut = a == 0 ? 0 : cu[a - 1];          // u <= ucut on side A
            int vcut = b == cv.size() ? g.v_count() + 1 : cv[b];  // v >= vcut on side A
            std::vector<ObgEdge> ea, eb, ex;
            for (const auto& [u, v] : mod.core_edges) {
              bool ua = u <= ucut, va = v >= vcut;
              if (ua && va)
                ea.emplace_back(u, v);
              else if (!ua && !va)
                eb.emplace_back(u, v);
              else
                ex.emplace_back(u, v);
            }
            for (const auto& set : {ea, eb, ex})
              for (const auto& comp : detail::edge_components(set))
                if (!detail::is_leftward_tree_component(comp))
                  return fail("module rooted at " + to_string(mod.root) +
                              ": partition unit is not a leftward tree");
          }
      }
      return rep;
    }
    case ModuleLemma::DistanceWitness:
      throw std::invalid_argument(
          "verify_module_lemma: DistanceWitness needs the geometric overload");
  }
  throw std::logic_error("verify_module_lemma: unknown selector");
}

// Geometric selector: when an external vertex is adjacent to a core vertex
// of a module carrying an auxiliary vertex on the same side, the closing
// non-edge pair must be shorter than unit length.
template <class T>
ModuleLemmaReport verify_module_lemma(const Obg& g, const ModuleDecomposition& md,
                                      ModuleLemma sel, const GeoGraph<T>& src,
                                      const std::vector<std::size_t>& u_map,
                                      const std::vector<std::size_t>& v_map) {
  if (sel != ModuleLemma::DistanceWitness) return verify_module_lemma(g, md, sel);
  ModuleLemmaReport rep;
  T unit = scalar_from_double<T>(1.0);
  for (const auto& mod : md.modules) {
    std::vector<int> cu, cv, au, av;
    detail::split_sides(mod.core.vertices, cu, cv);
    detail::split_sides(mod.aux_vertices, au, av);
    std::vector<int> mu = cu, mv = cv;
    mu.insert(mu.end(), au.begin(), au.end());
    mv.insert(mv.end(), av.begin(), av.end());
    if (mv.empty() || mu.empty()) continue;
    int vmin = *std::min_element(mv.begin(), mv.end());
    int umin = *std::min_element(mu.begin(), mu.end());
    // External low V vertex adjacent to a core U vertex; every auxiliary U
    // vertex it misses must sit within unit distance of it.
    for (int v = 1; v < vmin; ++v) {
      bool hits_core = false;
      for (int u : g.neighbors_of_v(v))
        if (std::find(cu.begin(), cu.end(), u) != cu.end()) hits_core = true;
      if (!hits_core) continue;
      for (int u2 : au) {
        if (g.has_edge(u2, v)) continue;
        T d2 = squared_distance(src.points[u_map[static_cast<std::size_t>(u2)]],
                                src.points[v_map[static_cast<std::size_t>(v)]]);
        if (!(d2 < unit)) {
          rep.pass = false;
          rep.counterexample = "pair (u" + std::to_string(u2) + ",v" +
                               std::to_string(v) + ") not within unit distance";
          return rep;
        }
      }
    }
    // Mirrored case with an external low U vertex.
    for (int u = 1; u < umin; ++u) {
      bool hits_core = false;
      for (int v : g.neighbors_of_u(u))
        if (std::find(cv.begin(), cv.end(), v) != cv.end()) hits_core = true;
      if (!hits_core) continue;
      for (int v2 : av) {
        if (g.has_edge(u, v2)) continue;
        T d2 = squared_distance(src.points[u_map[static_cast<std::size_t>(u)]],
                                src.points[v_map[static_cast<std::size_t>(v2)]]);
        if (!(d2 < unit)) {
          rep.pass = false;
          rep.counterexample = "pair (u" + std::to_string(u) + ",v" +
                               std::to_string(v2) + ") not within unit distance";
          return rep;
        }
      }
    }
  }
  return rep;
}

}  // namespace cpg
