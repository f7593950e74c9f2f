#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cpg/geograph.hpp"
#include "cpg/obg.hpp"

namespace cpg {

// ---------------------------------------------------------------------------
// Antipodal split of a convex geometric graph into two ordered sides plus
// crossing / non-crossing edge classification.
// ---------------------------------------------------------------------------

// Indices of `points` in ccw hull order starting at the lexicographically
// smallest point. Requires strictly convex position.
template <class T>
std::vector<std::size_t> hull_order_indices(const std::vector<Point<T>>& points) {
  auto hull = detail::convex_hull_ccw(points);
  if (hull.size() != points.size())
    throw std::invalid_argument("hull_order_indices: points not strictly convex");
  auto lo = std::min_element(hull.begin(), hull.end());
  std::rotate(hull.begin(), lo, hull.end());
  std::vector<std::size_t> order;
  order.reserve(points.size());
  for (const auto& h : hull) {
    auto it = std::find(points.begin(), points.end(), h);
    order.push_back(static_cast<std::size_t>(it - points.begin()));
  }
  return order;
}

// Antipodal pairs expressed as indices into `points` (any input order).
template <class T>
std::vector<std::pair<std::size_t, std::size_t>> antipodal_point_pairs(
    const std::vector<Point<T>>& points) {
  auto cps = ConvexPointSet<T>::from_points(points);
  auto order = hull_order_indices(points);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (auto [a, b] : antipodal_pairs(cps)) {
    std::size_t i = order[a], j = order[b];
    out.emplace_back(std::min(i, j), std::max(i, j));
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <class T>
struct SideSplit {
  std::pair<std::size_t, std::size_t> pair;  // point indices, i < j
  // Point index sequences of the two open half-plane sides, both ordered
  // along the hull from the p_i end toward the p_j end. u_pts is the larger
  // side (ties: the side holding the higher minimum point index).
  std::vector<std::size_t> u_pts, v_pts;
  std::vector<Edge> crossing;
  std::vector<Edge> dropped;  // same-side edges and edges touching the pair
};

template <class T>
SideSplit<T> split_by_antipodal(const GeoGraph<T>& g,
                                std::pair<std::size_t, std::size_t> pair) {
  if (pair.first > pair.second) std::swap(pair.first, pair.second);
  auto pairs = antipodal_point_pairs(g.points);
  if (std::find(pairs.begin(), pairs.end(), pair) == pairs.end())
    throw std::invalid_argument("split_by_antipodal: pair is not antipodal");
  const Point<T>&pi = g.points[pair.first], &pj = g.points[pair.second];

  auto side_of = [&](std::size_t k) -> int {
    T c = cross(pi, pj, g.points[k]);
    return c > 0 ? 1 : (c < 0 ? -1 : 0);
  };
  for (std::size_t k = 0; k < g.n(); ++k)
    if (k != pair.first && k != pair.second && side_of(k) == 0)
      throw std::invalid_argument(
          "split_by_antipodal: third point on the antipodal line");

  // Walk the hull ccw from p_i to p_j: that arc is one side; the rest is the
  // other. Reversing the second arc makes both run p_i end -> p_j end.
  auto order = hull_order_indices(g.points);
  std::size_t n = order.size();
  std::size_t hi = 0, hj = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (order[k] == pair.first) hi = k;
    if (order[k] == pair.second) hj = k;
  }
  std::vector<std::size_t> arc1, arc2;
  for (std::size_t k = (hi + 1) % n; k != hj; k = (k + 1) % n)
    arc1.push_back(order[k]);
  for (std::size_t k = (hj + 1) % n; k != hi; k = (k + 1) % n)
    arc2.push_back(order[k]);
  std::reverse(arc2.begin(), arc2.end());

  SideSplit<T> s;
  s.pair = pair;
  bool arc1_is_v;
  if (arc1.size() != arc2.size())
    arc1_is_v = arc1.size() < arc2.size();
  else {
    std::size_t m1 = arc1.empty() ? g.n() : *std::min_element(arc1.begin(), arc1.end());
    std::size_t m2 = arc2.empty() ? g.n() : *std::min_element(arc2.begin(), arc2.end());
    arc1_is_v = m1 < m2;
  }
  s.u_pts = arc1_is_v ? arc2 : arc1;
  s.v_pts = arc1_is_v ? arc1 : arc2;

  for (const Edge& e : g.edges) {
    bool touches = e.first == pair.first || e.first == pair.second ||
                   e.second == pair.first || e.second == pair.second;
    if (!touches && side_of(e.first) * side_of(e.second) < 0)
      s.crossing.push_back(e);
    else
      s.dropped.push_back(e);
  }
  if (s.dropped.size() > 2 * g.n())
    throw std::logic_error("split_by_antipodal: non-crossing edges exceed 2n");
  return s;
}

// ---------------------------------------------------------------------------
// Angle partition into E1 / E2 and trimming.
// ---------------------------------------------------------------------------

struct ObgWithMaps {
  Obg graph;
  std::vector<std::size_t> u_map, v_map;  // 1-based OBG index -> point index
};

// Partitions the crossing edges by the angle rule: edge (u_i, v_j) goes to
// E1 when the angle at v_j toward its next-order side neighbor is acute,
// otherwise to E2 via the previous-order neighbor (both acute: E1). At the
// ends of a side sequence the missing order neighbor is the antipodal
// endpoint adjacent to that end of the hull chain. E2 is returned with both
// vertex orders reversed.
template <class T>
std::pair<ObgWithMaps, ObgWithMaps> partition_E1_E2(const GeoGraph<T>& g,
                                                    const SideSplit<T>& s) {
  const std::size_t n1 = s.u_pts.size(), n2 = s.v_pts.size();
  std::vector<int> upos(g.n(), 0), vpos(g.n(), 0);  // 1-based, 0 = absent
  for (std::size_t k = 0; k < n1; ++k) upos[s.u_pts[k]] = static_cast<int>(k) + 1;
  for (std::size_t k = 0; k < n2; ++k) vpos[s.v_pts[k]] = static_cast<int>(k) + 1;

  auto v_order_neighbor = [&](int j, int delta) -> const Point<T>& {
    int t = j + delta;
    if (t >= 1 && t <= static_cast<int>(n2))
      return g.points[s.v_pts[static_cast<std::size_t>(t) - 1]];
    // Sequences run from the p_i end to the p_j end.
    return t < 1 ? g.points[s.pair.first] : g.points[s.pair.second];
  };

  std::vector<ObgEdge> e1, e2;
  for (const Edge& e : s.crossing) {
    bool fwd = upos[e.first] > 0 && vpos[e.second] > 0;
    std::size_t up = fwd ? e.first : e.second;
    std::size_t vp = fwd ? e.second : e.first;
    int a = upos[up], j = vpos[vp];
    if (a == 0 || j == 0)
      throw std::logic_error("partition_E1_E2: crossing edge misses the sides");
    const Point<T>& pv = g.points[vp];
    const Point<T>& pu = g.points[up];
    bool next_acute = angle_class(pv, pu, v_order_neighbor(j, +1)) == AngleClass::Acute;
    bool prev_acute = angle_class(pv, pu, v_order_neighbor(j, -1)) == AngleClass::Acute;
    if (next_acute)
      e1.emplace_back(a, j);
    else if (prev_acute)
      e2.emplace_back(static_cast<int>(n1) + 1 - a, static_cast<int>(n2) + 1 - j);
    else
      throw std::logic_error(
          "partition_E1_E2: neither side angle acute; convexity premise broken");
  }

  ObgWithMaps g1, g2;
  g1.graph = Obg(static_cast<int>(n1), static_cast<int>(n2), std::move(e1));
  g2.graph = Obg(static_cast<int>(n1), static_cast<int>(n2), std::move(e2));
  g1.u_map.assign(n1 + 1, 0);
  g1.v_map.assign(n2 + 1, 0);
  g2.u_map.assign(n1 + 1, 0);
  g2.v_map.assign(n2 + 1, 0);
  for (std::size_t k = 0; k < n1; ++k) {
    g1.u_map[k + 1] = s.u_pts[k];
    g2.u_map[n1 - k] = s.u_pts[k];
  }
  for (std::size_t k = 0; k < n2; ++k) {
    g1.v_map[k + 1] = s.v_pts[k];
    g2.v_map[n2 - k] = s.v_pts[k];
  }
  return {std::move(g1), std::move(g2)};
}

enum class TrimSide { Left, Right };

struct TrimResult {
  Obg graph;
  std::vector<ObgEdge> removed;
};

// For every V vertex of degree >= 1 removes its edge to the extreme
// U-neighbor: highest order for Left, lowest order for Right.
inline TrimResult trim(const Obg& g, TrimSide side) {
  std::vector<ObgEdge> keep, removed;
  for (int v = 1; v <= g.v_count(); ++v) {
    const auto& nbrs = g.neighbors_of_v(v);
    if (nbrs.empty()) continue;
    int drop = side == TrimSide::Left ? nbrs.back() : nbrs.front();
    for (int u : nbrs)
      (u == drop ? removed : keep).emplace_back(u, v);
  }
  return {Obg(g.u_count(), g.v_count(), std::move(keep)), std::move(removed)};
}

// ---------------------------------------------------------------------------
// Full pipeline.
// ---------------------------------------------------------------------------

template <class T>
struct Decomposition {
  GeoGraph<T> source;
  std::pair<std::size_t, std::size_t> pair;
  Obg g1, g2;  // trimmed E1 / E2 graphs; g2 carries reversed orders
  std::vector<std::size_t> u_map1, v_map1, u_map2, v_map2;
  std::vector<Edge> noncrossing_dropped, left_trimmed, right_trimmed;
};

struct DecomposeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string witness_string(const PrbgWitness& w) {
  std::string s = "path";
  for (const Vtx& x : w.path) s += " " + to_string(x);
  s += ", back edge (u" + std::to_string(w.back_edge.first) + ",v" +
       std::to_string(w.back_edge.second) + ")";
  return s;
}

}  // namespace detail

// Policy: pair given explicitly, or automatic selection minimizing the side
// size imbalance with ties to the smallest index pair.
template <class T>
Decomposition<T> decompose_full(
    const GeoGraph<T>& g,
    std::optional<std::pair<std::size_t, std::size_t>> pair = std::nullopt) {
  if (!is_valid_lgg(g))
    throw std::invalid_argument("decompose_full: input is not a valid LGG");
  if (!pair) {
    auto pairs = antipodal_point_pairs(g.points);
    std::size_t best_gap = g.n() + 1;
    for (const auto& p : pairs) {
      auto sp = split_by_antipodal(g, p);
      std::size_t gap = sp.u_pts.size() - sp.v_pts.size();
      if (gap < best_gap) {
        best_gap = gap;
        pair = p;
      }
    }
  }
  auto s = split_by_antipodal(g, *pair);
  auto [p1, p2] = partition_E1_E2(g, s);

  // Both stored graphs drop the highest-order neighbor per V vertex; for g2
  // the orders are pre-reversed, so this realizes trimming at the opposite
  // geometric end.
  auto t1 = trim(p1.graph, TrimSide::Left);
  auto t2 = trim(p2.graph, TrimSide::Left);

  Decomposition<T> d;
  d.source = g;
  d.pair = *pair;
  d.g1 = std::move(t1.graph);
  d.g2 = std::move(t2.graph);
  d.u_map1 = p1.u_map;
  d.v_map1 = p1.v_map;
  d.u_map2 = p2.u_map;
  d.v_map2 = p2.v_map;
  d.noncrossing_dropped = s.dropped;
  for (const auto& [u, v] : t1.removed)
    d.left_trimmed.push_back(make_edge(p1.u_map[u], p1.v_map[v]));
  for (const auto& [u, v] : t2.removed)
    d.right_trimmed.push_back(make_edge(p2.u_map[u], p2.v_map[v]));

  if (auto r = is_prbg(d.g1, PrbgEngine::Fast); !r.prbg)
    throw DecomposeError("decompose_full: g1 violates the path restriction: " +
                         detail::witness_string(*r.witness));
  if (auto r = is_prbg(d.g2, PrbgEngine::Fast); !r.prbg)
    throw DecomposeError("decompose_full: g2 violates the path restriction: " +
                         detail::witness_string(*r.witness));

  std::size_t total = d.g1.edge_count() + d.g2.edge_count() +
                      d.noncrossing_dropped.size() + d.left_trimmed.size() +
                      d.right_trimmed.size();
  if (total != g.edges.size())
    throw std::logic_error("decompose_full: edge accounting mismatch");
  if (d.left_trimmed.size() + d.right_trimmed.size() > g.n())
    throw std::logic_error("decompose_full: trimmed more than n edges");
  return d;
}

}  // namespace cpg
