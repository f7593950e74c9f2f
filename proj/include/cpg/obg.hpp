#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cpg {

// ---------------------------------------------------------------------------
// Ordered bipartite graphs. Vertex indices are 1-based on each side; the
// side orders are the index orders.
// ---------------------------------------------------------------------------

enum class Side { U, V };

struct Vtx {
  Side side = Side::U;
  int idx = 0;

  friend bool operator==(const Vtx& a, const Vtx& b) {
    return a.side == b.side && a.idx == b.idx;
  }
  friend bool operator!=(const Vtx& a, const Vtx& b) { return !(a == b); }
  friend bool operator<(const Vtx& a, const Vtx& b) {
    if (a.side != b.side) return a.side == Side::U;
    return a.idx < b.idx;
  }
};

inline Vtx uv(int i) { return Vtx{Side::U, i}; }
inline Vtx vv(int j) { return Vtx{Side::V, j}; }

inline std::string to_string(const Vtx& x) {
  return (x.side == Side::U ? "u" : "v") + std::to_string(x.idx);
}

using ObgEdge = std::pair<int, int>;  // (u index, v index), 1-based

class Obg {
 public:
  Obg() = default;
  Obg(int u_count, int v_count, std::vector<ObgEdge> edges)
      : nu_(u_count), nv_(v_count), edges_(std::move(edges)) {
    if (nu_ < 0 || nv_ < 0) throw std::invalid_argument("Obg: negative side count");
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    adj_u_.assign(nu_ + 1, {});
    adj_v_.assign(nv_ + 1, {});
    for (const auto& [u, v] : edges_) {
      if (u < 1 || u > nu_ || v < 1 || v > nv_)
        throw std::invalid_argument("Obg: edge index out of range");
      adj_u_[u].push_back(v);
      adj_v_[v].push_back(u);
    }
  }

  int u_count() const { return nu_; }
  int v_count() const { return nv_; }
  int n() const { return nu_ + nv_; }
  const std::vector<ObgEdge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  const std::vector<int>& neighbors_of_u(int u) const { return adj_u_[u]; }
  const std::vector<int>& neighbors_of_v(int v) const { return adj_v_[v]; }
  const std::vector<int>& neighbors(const Vtx& x) const {
    return x.side == Side::U ? adj_u_[x.idx] : adj_v_[x.idx];
  }

  bool has_edge(int u, int v) const {
    return std::binary_search(adj_u_[u].begin(), adj_u_[u].end(), v);
  }
  bool has_edge(const Vtx& a, const Vtx& b) const {
    if (a.side == b.side) return false;
    return a.side == Side::U ? has_edge(a.idx, b.idx) : has_edge(b.idx, a.idx);
  }

  // Both side orders reversed.
  Obg reversed() const {
    std::vector<ObgEdge> es;
    es.reserve(edges_.size());
    for (const auto& [u, v] : edges_) es.emplace_back(nu_ + 1 - u, nv_ + 1 - v);
    return Obg(nu_, nv_, std::move(es));
  }

  // Sides swapped (U becomes V).
  Obg transposed() const {
    std::vector<ObgEdge> es;
    es.reserve(edges_.size());
    for (const auto& [u, v] : edges_) es.emplace_back(v, u);
    return Obg(nv_, nu_, std::move(es));
  }

 private:
  int nu_ = 0;
  int nv_ = 0;
  std::vector<ObgEdge> edges_;
  std::vector<std::vector<int>> adj_u_, adj_v_;
};

// ---------------------------------------------------------------------------
// Forward paths.
// ---------------------------------------------------------------------------

using VtxSeq = std::vector<Vtx>;

struct PathRange {
  int u_lo = 0, u_hi = 0, v_lo = 0, v_hi = 0;
};

inline PathRange path_range(const VtxSeq& seq) {
  PathRange r;
  bool fu = true, fv = true;
  for (const Vtx& x : seq) {
    if (x.side == Side::U) {
      if (fu) { r.u_lo = r.u_hi = x.idx; fu = false; }
      r.u_lo = std::min(r.u_lo, x.idx);
      r.u_hi = std::max(r.u_hi, x.idx);
    } else {
      if (fv) { r.v_lo = r.v_hi = x.idx; fv = false; }
      r.v_lo = std::min(r.v_lo, x.idx);
      r.v_hi = std::max(r.v_hi, x.idx);
    }
  }
  return r;
}

// True iff seq alternates sides, all consecutive pairs are edges, and both
// side subsequences are strictly monotone in the same direction.
inline bool is_forward_path(const Obg& g, const VtxSeq& seq) {
  if (seq.size() < 2) throw std::invalid_argument("is_forward_path: need >= 2 vertices");
  for (std::size_t i = 1; i < seq.size(); ++i) {
    if (seq[i].side == seq[i - 1].side)
      throw std::invalid_argument("is_forward_path: sequence does not alternate sides");
    if (!g.has_edge(seq[i - 1], seq[i])) return false;
  }
  auto side_dir = [&](Side s) {  // +1 increasing, -1 decreasing, 0 constant
    int prev = 0, dir = 0;
    for (const Vtx& x : seq) {
      if (x.side != s) continue;
      if (prev != 0) {
        if (x.idx == prev) return 2;  // repeat: invalid
        int d = x.idx > prev ? 1 : -1;
        if (dir != 0 && d != dir) return 2;
        dir = d;
      }
      prev = x.idx;
    }
    return dir;
  };
  int du = side_dir(Side::U);
  int dv = side_dir(Side::V);
  if (du == 2 || dv == 2) return false;
  return du == 0 || dv == 0 || du == dv;
}

namespace detail {

// Canonical increasing orientation: first vertex is the minimum endpoint.
inline VtxSeq canonical_increasing(const Obg& g, VtxSeq seq) {
  if (!is_forward_path(g, seq))
    throw std::invalid_argument("path is not a forward path of the graph");
  // Decide direction from the first side with >= 2 vertices.
  for (Side s : {Side::U, Side::V}) {
    int prev = 0;
    for (const Vtx& x : seq) {
      if (x.side != s) continue;
      if (prev != 0) {
        if (x.idx < prev) std::reverse(seq.begin(), seq.end());
        return seq;
      }
      prev = x.idx;
    }
  }
  return seq;  // single edge: direction immaterial
}

}  // namespace detail

struct BackEdge {
  ObgEdge edge;   // the offending edge
  Vtx corner;     // path corner it attaches to (min-U or min-V vertex)
};

// Back edges to a forward path. With the path written in increasing
// orientation and corners u_a = min U vertex, v_c = min V vertex:
//   * (v_c, u_i) is a back edge iff u_i lies in the path's U order-interval,
//     u_i exceeds the path's second-lowest U vertex, and that second vertex
//     is non-terminal (incident to two path edges);
//   * (u_a, v_j) symmetrically on the V side.
// Edges of the path itself never qualify.
inline std::vector<BackEdge> back_edges(const Obg& g, const VtxSeq& path) {
  VtxSeq seq = detail::canonical_increasing(g, path);
  std::vector<int> us, vs;
  for (const Vtx& x : seq)
    (x.side == Side::U ? us : vs).push_back(x.idx);
  auto on_path_edge = [&](const Vtx& a, const Vtx& b) {
    for (std::size_t i = 1; i < seq.size(); ++i)
      if ((seq[i - 1] == a && seq[i] == b) || (seq[i - 1] == b && seq[i] == a))
        return true;
    return false;
  };
  std::vector<BackEdge> out;
  if (us.size() >= 2) {
    int ua = us.front(), second = us[1], ub = us.back();
    bool nonterminal = !(seq.front() == uv(second)) && !(seq.back() == uv(second));
    if (nonterminal) {
      int vc = vs.front();
      for (int ui : g.neighbors_of_v(vc))
        if (ui > second && ui >= ua && ui <= ub && !on_path_edge(vv(vc), uv(ui)))
          out.push_back({{ui, vc}, vv(vc)});
    }
  }
  if (vs.size() >= 2) {
    int vc = vs.front(), second = vs[1], vd = vs.back();
    bool nonterminal = !(seq.front() == vv(second)) && !(seq.back() == vv(second));
    if (nonterminal) {
      int ua = us.front();
      for (int vj : g.neighbors_of_u(ua))
        if (vj > second && vj >= vc && vj <= vd && !on_path_edge(uv(ua), vv(vj)))
          out.push_back({{ua, vj}, uv(ua)});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Path-restricted property: two engines.
// ---------------------------------------------------------------------------

enum class PrbgEngine { BruteForce, Fast };

struct PrbgWitness {
  VtxSeq path;
  ObgEdge back_edge;
};

struct PrbgResult {
  bool prbg = true;
  std::optional<PrbgWitness> witness;
};

namespace detail {

// Enumerates every forward path in increasing orientation by breadth-first
// extension at the high end, checking back edges as soon as a path forms.
// Breadth-first order makes the first witness minimal in length.
inline PrbgResult prbg_bruteforce(const Obg& g) {
  std::deque<VtxSeq> layer;
  for (int u = 1; u <= g.u_count(); ++u) layer.push_back({uv(u)});
  for (int v = 1; v <= g.v_count(); ++v) layer.push_back({vv(v)});
  while (!layer.empty()) {
    VtxSeq seq = std::move(layer.front());
    layer.pop_front();
    const Vtx& tail = seq.back();
    // Last vertex on the side opposite to `tail`, if any.
    int last_opp = 0;
    for (auto it = seq.rbegin(); it != seq.rend(); ++it)
      if (it->side != tail.side) { last_opp = it->idx; break; }
    for (int nb : g.neighbors(tail)) {
      if (nb <= last_opp) continue;
      VtxSeq ext = seq;
      ext.push_back(Vtx{tail.side == Side::U ? Side::V : Side::U, nb});
      auto bes = back_edges(g, ext);
      if (!bes.empty()) return {false, PrbgWitness{ext, bes.front().edge}};
      layer.push_back(std::move(ext));
    }
  }
  return {true, std::nullopt};
}

// Dynamic program for the fast engine: for a directed path state arriving
// at `cur` with `prev` the last vertex on the opposite side, reach[state]
// is the maximum U vertex on any monotone continuation (including cur when
// cur is on the U side).
class ReachDp {
 public:
  explicit ReachDp(const Obg& g) : g_(g) {
    std::size_t m = g.edge_count();
    toward_u_.assign(m, -1);
    toward_v_.assign(m, -1);
    edge_id_.reserve(m);
    for (std::size_t e = 0; e < g.edges().size(); ++e)
      edge_id_[g.edges()[e]] = e;
  }

  // State: ...prev(v), cur(u).
  int at_u(int v, int u) {
    std::size_t e = id(u, v);
    if (toward_u_[e] >= 0) return toward_u_[e];
    int best = u;
    for (int v2 : g_.neighbors_of_u(u))
      if (v2 > v) best = std::max(best, at_v(u, v2));
    return toward_u_[e] = best;
  }

  // State: ...prev(u), cur(v). 0 when no continuation exists.
  int at_v(int u, int v) {
    std::size_t e = id(u, v);
    if (toward_v_[e] >= 0) return toward_v_[e];
    int best = 0;
    for (int u2 : g_.neighbors_of_v(v))
      if (u2 > u) best = std::max(best, at_u(v, u2));
    return toward_v_[e] = best;
  }

  // Reconstructs the continuation from state (v -> u) that attains the
  // reach value, as the suffix sequence starting at u.
  VtxSeq trace_from_u(int v, int u) {
    VtxSeq seq{uv(u)};
    int target = at_u(v, u);
    int pv = v, pu = u;
    while (pu != target) {
      bool advanced = false;
      for (int v2 : g_.neighbors_of_u(pu)) {
        if (v2 <= pv || at_v(pu, v2) != target) continue;
        for (int u2 : g_.neighbors_of_v(v2)) {
          if (u2 <= pu || at_u(v2, u2) != target) continue;
          seq.push_back(vv(v2));
          seq.push_back(uv(u2));
          pv = v2;
          pu = u2;
          advanced = true;
          break;
        }
        if (advanced) break;
      }
      if (!advanced) throw std::logic_error("ReachDp: broken trace");
    }
    return seq;
  }

 private:
  std::size_t id(int u, int v) const {
    auto it = edge_id_.find({u, v});
    if (it == edge_id_.end()) throw std::logic_error("ReachDp: unknown edge");
    return it->second;
  }

  const Obg& g_;
  std::vector<int> toward_u_, toward_v_;
  struct Hash {
    std::size_t operator()(const ObgEdge& e) const {
      return std::hash<long long>()((static_cast<long long>(e.first) << 32) ^ e.second);
    }
  };
  std::unordered_map<ObgEdge, std::size_t, Hash> edge_id_;
};

// Checks the U-corner clause: a back edge (v_c, u_i). Violations decompose
// by the shape of the path prefix below the second U vertex s:
//   shape B:  u_a - v_c - s - ...        (path starts on the U side)
//   shape A:  v_c - u_a - v' - s - ...   (path starts on the V side)
// In both shapes the continuation beyond s must reach a U vertex M > s and
// v_c must have a neighbor u_i with s < u_i <= M.
inline std::optional<PrbgWitness> fast_violation_u_corner(const Obg& g) {
  ReachDp dp(g);
  auto find_ui = [&](int vc, int lo, int hi) -> int {  // neighbor in (lo, hi]
    const auto& nbrs = g.neighbors_of_v(vc);
    auto it = std::upper_bound(nbrs.begin(), nbrs.end(), lo);
    if (it != nbrs.end() && *it <= hi) return *it;
    return 0;
  };
  for (int vc = 1; vc <= g.v_count(); ++vc) {
    const auto& nbrs = g.neighbors_of_v(vc);
    if (nbrs.empty()) continue;
    // Shape B.
    for (int s : nbrs) {
      if (nbrs.front() >= s) continue;  // need u_a < s adjacent to v_c
      int m = dp.at_u(vc, s);
      if (m <= s) continue;
      int ui = find_ui(vc, s, m);
      if (ui == 0) continue;
      VtxSeq path{uv(nbrs.front()), vv(vc)};
      VtxSeq suffix = dp.trace_from_u(vc, s);
      path.insert(path.end(), suffix.begin(), suffix.end());
      return PrbgWitness{path, {ui, vc}};
    }
    // Shape A.
    for (int ua : nbrs) {
      for (int vp : g.neighbors_of_u(ua)) {
        if (vp <= vc) continue;
        for (int s : g.neighbors_of_v(vp)) {
          if (s <= ua) continue;
          int m = dp.at_u(vp, s);
          if (m <= s) continue;
          int ui = find_ui(vc, s, m);
          if (ui == 0) continue;
          VtxSeq path{vv(vc), uv(ua), vv(vp)};
          VtxSeq suffix = dp.trace_from_u(vp, s);
          path.insert(path.end(), suffix.begin(), suffix.end());
          return PrbgWitness{path, {ui, vc}};
        }
      }
    }
  }
  return std::nullopt;
}

// Witness-free violation test over one orientation, linear-time reach
// computation with flat arrays. Columns are processed in descending order:
// toward_u(v,u) only needs reaches through strictly higher columns and
// toward_v(u,v) only needs toward_u values within the same column.
inline bool feasible_u_corner(const Obg& g) {
  const std::size_t m = g.edge_count();
  std::vector<int> toward_u(m, 0), toward_v(m, 0);
  std::vector<std::vector<std::pair<int, std::size_t>>> col(g.v_count() + 1);
  for (std::size_t e = 0; e < m; ++e)
    col[g.edges()[e].second].emplace_back(g.edges()[e].first, e);
  std::vector<int> agg_u(g.u_count() + 1, 0);
  for (int v = g.v_count(); v >= 1; --v) {
    for (auto& [u, e] : col[v]) toward_u[e] = std::max(u, agg_u[u]);
    int run = 0;
    for (auto it = col[v].rbegin(); it != col[v].rend(); ++it) {
      toward_v[it->second] = run;
      run = std::max(run, toward_u[it->second]);
    }
    for (auto& [u, e] : col[v]) agg_u[u] = std::max(agg_u[u], toward_v[e]);
  }
  auto has_nbr_in = [&](int vc, int lo, int hi) {  // neighbor of vc in (lo, hi]
    const auto& nbrs = g.neighbors_of_v(vc);
    auto it = std::upper_bound(nbrs.begin(), nbrs.end(), lo);
    return it != nbrs.end() && *it <= hi;
  };
  for (int vc = 1; vc <= g.v_count(); ++vc) {
    const auto& nbrs = g.neighbors_of_v(vc);
    if (nbrs.empty()) continue;
    for (auto& [s, e] : col[vc]) {  // shape B
      if (nbrs.front() >= s) continue;
      int reach = toward_u[e];
      if (reach > s && has_nbr_in(vc, s, reach)) return false;
    }
    for (int ua : nbrs) {  // shape A
      for (int vp : g.neighbors_of_u(ua)) {
        if (vp <= vc) continue;
        for (auto& [s, e] : col[vp]) {
          if (s <= ua) continue;
          int reach = toward_u[e];
          if (reach > s && has_nbr_in(vc, s, reach)) return false;
        }
      }
    }
  }
  return true;
}

inline bool prbg_feasible(const Obg& g) {
  return feasible_u_corner(g) && feasible_u_corner(g.transposed());
}

inline PrbgResult prbg_fast(const Obg& g) {
  if (auto w = fast_violation_u_corner(g)) return {false, w};
  // V-corner clause by transposition.
  Obg t = g.transposed();
  if (auto w = fast_violation_u_corner(t)) {
    // Map the witness back: sides swap.
    VtxSeq path;
    for (const Vtx& x : w->path)
      path.push_back(Vtx{x.side == Side::U ? Side::V : Side::U, x.idx});
    return {false, PrbgWitness{path, {w->back_edge.second, w->back_edge.first}}};
  }
  return {true, std::nullopt};
}

}  // namespace detail

inline PrbgResult is_prbg(const Obg& g, PrbgEngine engine) {
  switch (engine) {
    case PrbgEngine::BruteForce:
      if (g.n() > 40)
        throw std::invalid_argument("is_prbg: brute-force engine guarded to 40 vertices");
      return detail::prbg_bruteforce(g);
    case PrbgEngine::Fast:
      return detail::prbg_fast(g);
  }
  throw std::logic_error("is_prbg: unknown engine");
}

// ---------------------------------------------------------------------------
// Monotone trees T_l / T_r.
// ---------------------------------------------------------------------------

enum class Direction { Leftward, Rightward };  // toward higher / lower order

struct MonotoneTree {
  Vtx root;
  Direction direction = Direction::Leftward;
  std::vector<Vtx> vertices;                // root first, discovery order
  std::vector<std::pair<Vtx, Vtx>> edges;   // (parent, child)
  // Set when the union of forward paths is not a tree: a vertex reachable
  // by two distinct forward paths from the root (a PRBG violation).
  std::optional<Vtx> meet;
};

// Union of all forward paths from `root` in the given direction, restricted
// to vertices enabled in the masks (1-based; empty mask = all allowed).
// Depth-first growth with ascending neighbor order; deterministic.
inline MonotoneTree monotone_tree_masked(const Obg& g, const Vtx& root, Direction dir,
                                         const std::vector<char>& allow_u,
                                         const std::vector<char>& allow_v) {
  auto allowed = [&](const Vtx& x) {
    const auto& m = x.side == Side::U ? allow_u : allow_v;
    return m.empty() || m[static_cast<std::size_t>(x.idx)] != 0;
  };
  if (!allowed(root))
    throw std::invalid_argument("monotone_tree_masked: root not allowed");
  MonotoneTree t;
  t.root = root;
  t.direction = dir;
  auto beyond = [&](int a, int b) {  // a strictly beyond b in direction
    return dir == Direction::Leftward ? a > b : a < b;
  };
  std::vector<std::vector<char>> seen(2);
  seen[0].assign(g.u_count() + 1, 0);
  seen[1].assign(g.v_count() + 1, 0);
  auto mark = [&](const Vtx& x) { seen[x.side == Side::U ? 0 : 1][x.idx] = 1; };
  auto marked = [&](const Vtx& x) {
    return seen[x.side == Side::U ? 0 : 1][x.idx] != 0;
  };
  mark(root);
  t.vertices.push_back(root);
  // Stack entries: (vertex, last U on path, last V on path); 0 = none yet.
  struct Item { Vtx x; int last_u; int last_v; };
  std::vector<Item> stack{{root, root.side == Side::U ? root.idx : 0,
                           root.side == Side::V ? root.idx : 0}};
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    Side child_side = it.x.side == Side::U ? Side::V : Side::U;
    int last_same = child_side == Side::U ? it.last_u : it.last_v;
    for (int nb : g.neighbors(it.x)) {
      if (last_same != 0 && !beyond(nb, last_same)) continue;
      Vtx child{child_side, nb};
      if (!allowed(child)) continue;
      if (marked(child)) {
        if (!t.meet) t.meet = child;
        continue;
      }
      mark(child);
      t.vertices.push_back(child);
      t.edges.emplace_back(it.x, child);
      stack.push_back({child,
                       child_side == Side::U ? nb : it.last_u,
                       child_side == Side::V ? nb : it.last_v});
    }
  }
  return t;
}

inline MonotoneTree monotone_tree(const Obg& g, const Vtx& root, Direction dir) {
  return monotone_tree_masked(g, root, dir, {}, {});
}

// ---------------------------------------------------------------------------
// Structural lemma verifiers.
// ---------------------------------------------------------------------------

enum class StructureLemma { TreeEdges, DisjointRanges, NeverMeet, SingleIncidence };

struct StructureReport {
  bool pass = true;
  std::string counterexample;  // empty when pass
};

namespace detail {

inline std::vector<Vtx> all_vertices(const Obg& g) {
  std::vector<Vtx> xs;
  for (int u = 1; u <= g.u_count(); ++u) xs.push_back(uv(u));
  for (int v = 1; v <= g.v_count(); ++v) xs.push_back(vv(v));
  return xs;
}

// Root-to-leaf vertex sequences of a monotone tree.
inline std::vector<VtxSeq> tree_leaf_paths(const MonotoneTree& t) {
  std::vector<std::pair<Vtx, Vtx>> up;  // child -> parent
  for (const auto& [p, c] : t.edges) up.emplace_back(c, p);
  auto parent_of = [&](const Vtx& x) -> std::optional<Vtx> {
    for (const auto& [c, p] : up)
      if (c == x) return p;
    return std::nullopt;
  };
  std::vector<VtxSeq> out;
  for (const Vtx& x : t.vertices) {
    if (x == t.root && !t.edges.empty()) continue;
    bool leaf = true;
    for (const auto& [p, c] : t.edges)
      if (p == x) { leaf = false; break; }
    if (!leaf) continue;
    VtxSeq path{x};
    auto cur = x;
    while (cur != t.root) {
      auto p = parent_of(cur);
      if (!p) break;
      path.push_back(*p);
      cur = *p;
    }
    std::reverse(path.begin(), path.end());
    out.push_back(std::move(path));
  }
  return out;
}

inline bool intervals_disjoint(int lo1, int hi1, int lo2, int hi2, bool present1,
                               bool present2) {
  if (!present1 || !present2) return true;
  return hi1 < lo2 || hi2 < lo1;
}

// Ranges of the two path suffixes strictly beyond their lowest common
// ancestor must be disjoint on both sides.
inline bool suffix_ranges_disjoint(const VtxSeq& a, const VtxSeq& b) {
  std::size_t k = 0;
  while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
  auto range_of = [&](const VtxSeq& p, std::size_t from, PathRange& r, bool& has_u,
                      bool& has_v) {
    has_u = has_v = false;
    bool fu = true, fv = true;
    for (std::size_t i = from; i < p.size(); ++i) {
      const Vtx& x = p[i];
      if (x.side == Side::U) {
        has_u = true;
        if (fu) { r.u_lo = r.u_hi = x.idx; fu = false; }
        r.u_lo = std::min(r.u_lo, x.idx);
        r.u_hi = std::max(r.u_hi, x.idx);
      } else {
        has_v = true;
        if (fv) { r.v_lo = r.v_hi = x.idx; fv = false; }
        r.v_lo = std::min(r.v_lo, x.idx);
        r.v_hi = std::max(r.v_hi, x.idx);
      }
    }
  };
  PathRange ra{}, rb{};
  bool au, av, bu, bv;
  range_of(a, k, ra, au, av);
  range_of(b, k, rb, bu, bv);
  return intervals_disjoint(ra.u_lo, ra.u_hi, rb.u_lo, rb.u_hi, au, bu) &&
         intervals_disjoint(ra.v_lo, ra.v_hi, rb.v_lo, rb.v_hi, av, bv);
}

}  // namespace detail

inline StructureReport verify_structure(const Obg& g, StructureLemma lemma) {
  if (!is_prbg(g, PrbgEngine::Fast).prbg)
    throw std::invalid_argument("verify_structure: graph is not a PRBG");
  StructureReport rep;
  auto fail = [&](std::string why) {
    rep.pass = false;
    rep.counterexample = std::move(why);
    return rep;
  };
  switch (lemma) {
    case StructureLemma::TreeEdges: {
      for (const Vtx& x : detail::all_vertices(g)) {
        auto t = monotone_tree(g, x, Direction::Rightward);
        if (t.meet) return fail("T_r(" + to_string(x) + ") is not a tree");
        // Induced edges on the vertex set of T_r(x).
        std::vector<char> in_u(g.u_count() + 1, 0), in_v(g.v_count() + 1, 0);
        for (const Vtx& y : t.vertices)
          (y.side == Side::U ? in_u[y.idx] : in_v[y.idx]) = 1;
        std::size_t induced = 0;
        for (const auto& [u, v] : g.edges())
          if (in_u[u] && in_v[v]) ++induced;
        if (induced != t.vertices.size() - 1)
          return fail("T_r(" + to_string(x) + ") spans " +
                      std::to_string(t.vertices.size()) + " vertices but induces " +
                      std::to_string(induced) + " edges");
      }
      return rep;
    }
    case StructureLemma::DisjointRanges: {
      for (const Vtx& x : detail::all_vertices(g)) {
        auto t = monotone_tree(g, x, Direction::Leftward);
        if (t.meet) return fail("T_l(" + to_string(x) + ") is not a tree");
        auto paths = detail::tree_leaf_paths(t);
        for (std::size_t a = 0; a < paths.size(); ++a)
          for (std::size_t b = a + 1; b < paths.size(); ++b)
            if (!detail::suffix_ranges_disjoint(paths[a], paths[b]))
              return fail("T_l(" + to_string(x) + ") has overlapping path ranges");
      }
      return rep;
    }
    case StructureLemma::NeverMeet: {
      for (const Vtx& x : detail::all_vertices(g))
        for (Direction d : {Direction::Leftward, Direction::Rightward}) {
          auto t = monotone_tree(g, x, d);
          if (t.meet)
            return fail("forward paths from " + to_string(x) + " meet at " +
                        to_string(*t.meet));
        }
      return rep;
    }
    case StructureLemma::SingleIncidence: {
      // Every forward path is a root path of T_l of its lowest vertex, so
      // enumerating tree root paths covers all forward paths.
      for (const Vtx& x : detail::all_vertices(g)) {
        auto t = monotone_tree(g, x, Direction::Leftward);
        if (t.meet) return fail("T_l(" + to_string(x) + ") is not a tree");
        // DFS over root paths with incremental incidence counts.
        std::vector<std::vector<Vtx>> children(t.vertices.size());
        auto index_of = [&](const Vtx& y) {
          for (std::size_t i = 0; i < t.vertices.size(); ++i)
            if (t.vertices[i] == y) return i;
          throw std::logic_error("vertex missing from tree");
        };
        for (const auto& [p, c] : t.edges) children[index_of(p)].push_back(c);
        std::vector<int> cnt_u(g.u_count() + 1, 0), cnt_v(g.v_count() + 1, 0);
        std::vector<char> on_u(g.u_count() + 1, 0), on_v(g.v_count() + 1, 0);
        std::string bad;
        auto dfs = [&](auto&& self, const Vtx& y, std::size_t depth) -> bool {
          (y.side == Side::U ? on_u[y.idx] : on_v[y.idx]) = 1;
          for (int nb : g.neighbors(y)) {
            auto& c = y.side == Side::U ? cnt_v[nb] : cnt_u[nb];
            ++c;
            bool on_path = y.side == Side::U ? on_v[nb] : on_u[nb];
            if (c >= 2 && !on_path && depth >= 1) {
              bad = "vertex " + to_string(Vtx{y.side == Side::U ? Side::V : Side::U, nb}) +
                    " has two edges into a forward path from " + to_string(x);
              return false;
            }
          }
          for (const Vtx& ch : children[index_of(y)])
            if (!self(self, ch, depth + 1)) return false;
          for (int nb : g.neighbors(y))
            --(y.side == Side::U ? cnt_v[nb] : cnt_u[nb]);
          (y.side == Side::U ? on_u[y.idx] : on_v[y.idx]) = 0;
          return true;
        };
        if (!dfs(dfs, x, 0)) return fail(bad);
      }
      return rep;
    }
  }
  throw std::logic_error("verify_structure: unknown lemma");
}

// ---------------------------------------------------------------------------
// Random instances for property tests.
// ---------------------------------------------------------------------------

inline Obg gen_random_obg(int nu, int nv, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(density);
  std::vector<ObgEdge> edges;
  for (int u = 1; u <= nu; ++u)
    for (int v = 1; v <= nv; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return Obg(nu, nv, std::move(edges));
}

}  // namespace cpg
