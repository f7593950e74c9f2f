#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cpg/geom.hpp"

namespace cpg {

using Edge = std::pair<std::size_t, std::size_t>;  // i < j, point indices

inline Edge make_edge(std::size_t a, std::size_t b) {
  if (a == b) throw std::invalid_argument("edge endpoints must differ");
  return a < b ? Edge{a, b} : Edge{b, a};
}

// A planar point list plus an undirected edge set over point indices.
template <class T>
struct GeoGraph {
  std::vector<Point<T>> points;
  std::vector<Edge> edges;  // sorted, unique, i < j
  bool convex = false;

  std::size_t n() const { return points.size(); }

  void normalize() {
    for (auto& e : edges) e = make_edge(e.first, e.second);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (const auto& [i, j] : edges)
      if (j >= points.size())
        throw std::invalid_argument("GeoGraph: edge index out of range");
  }
};

template <class T>
GeoGraph<T> build_udg(const std::vector<Point<T>>& points, const T& tolerance) {
  if (tolerance < T(0)) throw std::invalid_argument("build_udg: negative tolerance");
  if constexpr (std::is_same_v<T, Rat>) {
    if (tolerance != T(0))
      throw std::invalid_argument("build_udg: rational mode requires tolerance 0");
  }
  GeoGraph<T> g;
  g.points = points;
  g.convex = points.size() >= 3 && is_convex_position(points);
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      T d2 = squared_distance(points[i], points[j]);
      T dev = d2 > T(1) ? T(d2 - T(1)) : T(T(1) - d2);
      if (dev <= tolerance) g.edges.emplace_back(i, j);
    }
  return g;
}

template <class T>
GeoGraph<T> build_gabriel(const std::vector<Point<T>>& points) {
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j])
        throw std::invalid_argument("build_gabriel: duplicate points");
  GeoGraph<T> g;
  g.points = points;
  g.convex = points.size() >= 3 && is_convex_position(points);
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      bool blocked = false;
      for (std::size_t k = 0; k < points.size() && !blocked; ++k) {
        if (k == i || k == j) continue;
        blocked = in_diameter_disk(points[k], points[i], points[j]);
      }
      if (!blocked) g.edges.emplace_back(i, j);
    }
  return g;
}

// Two edges sharing endpoint u conflict when either base angle of the
// triangle they span is >= pi/2; such a pair cannot coexist in an LGG.
template <class T>
bool edges_conflict(const GeoGraph<T>& g, const Edge& e1, const Edge& e2) {
  if (e1 == e2) throw std::invalid_argument("edges_conflict: identical edges");
  std::size_t u, v, w;
  if (e1.first == e2.first && e1.second != e2.second) {
    u = e1.first; v = e1.second; w = e2.second;
  } else if (e1.first == e2.second) {
    u = e1.first; v = e1.second; w = e2.first;
  } else if (e1.second == e2.first) {
    u = e1.second; v = e1.first; w = e2.second;
  } else if (e1.second == e2.second && e1.first != e2.first) {
    u = e1.second; v = e1.first; w = e2.first;
  } else {
    throw std::invalid_argument("edges_conflict: edges must share exactly one endpoint");
  }
  return angle_class(g.points[w], g.points[u], g.points[v]) != AngleClass::Acute ||
         angle_class(g.points[v], g.points[u], g.points[w]) != AngleClass::Acute;
}

template <class T>
struct LggReport {
  bool valid = true;
  std::optional<std::pair<Edge, Edge>> violation;
};

template <class T>
LggReport<T> check_lgg(const GeoGraph<T>& g) {
  std::vector<std::vector<std::size_t>> inc(g.n());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    inc[g.edges[e].first].push_back(e);
    inc[g.edges[e].second].push_back(e);
  }
  for (std::size_t v = 0; v < g.n(); ++v)
    for (std::size_t a = 0; a < inc[v].size(); ++a)
      for (std::size_t b = a + 1; b < inc[v].size(); ++b) {
        const Edge& e1 = g.edges[inc[v][a]];
        const Edge& e2 = g.edges[inc[v][b]];
        if (edges_conflict(g, e1, e2)) return {false, std::make_pair(e1, e2)};
      }
  return {true, std::nullopt};
}

template <class T>
bool is_valid_lgg(const GeoGraph<T>& g) {
  return check_lgg(g).valid;
}

template <class T>
std::vector<Edge> all_pairs(const std::vector<Point<T>>& points) {
  std::vector<Edge> pairs;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) pairs.emplace_back(i, j);
  return pairs;
}

// Default deterministic edge order: (squared length, index pair) ascending.
template <class T>
std::vector<Edge> lexicographic_edge_order(const std::vector<Point<T>>& points) {
  auto pairs = all_pairs(points);
  std::stable_sort(pairs.begin(), pairs.end(), [&](const Edge& a, const Edge& b) {
    T la = squared_distance(points[a.first], points[a.second]);
    T lb = squared_distance(points[b.first], points[b.second]);
    if (la != lb) return la < lb;
    return a < b;
  });
  return pairs;
}

template <class T>
std::vector<Edge> shuffled_edge_order(const std::vector<Point<T>>& points,
                                      std::uint64_t seed) {
  auto pairs = all_pairs(points);
  std::mt19937_64 rng(seed);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  return pairs;
}

template <class T>
GeoGraph<T> greedy_maximal_lgg(const std::vector<Point<T>>& points,
                               const std::vector<Edge>& edge_order) {
  if (edge_order.size() != points.size() * (points.size() - 1) / 2)
    throw std::invalid_argument("greedy_maximal_lgg: edge_order must cover all pairs");
  GeoGraph<T> g;
  g.points = points;
  g.convex = points.size() >= 3 && is_convex_position(points);
  std::vector<std::vector<Edge>> at(points.size());
  for (const Edge& cand : edge_order) {
    Edge e = make_edge(cand.first, cand.second);
    bool ok = true;
    for (std::size_t v : {e.first, e.second}) {
      for (const Edge& other : at[v]) {
        if (edges_conflict(g, e, other)) { ok = false; break; }
      }
      if (!ok) break;
    }
    if (ok) {
      g.edges.push_back(e);
      at[e.first].push_back(e);
      at[e.second].push_back(e);
    }
  }
  g.normalize();
  return g;
}

// Exact maximum conflict-free edge subset. LGG validity is a pairwise
// condition on adjacent edges, so this is a maximum independent set in the
// conflict graph over candidate pairs; plain bitset branch and bound.
template <class T>
std::pair<std::size_t, GeoGraph<T>> max_lgg_bruteforce(
    const std::vector<Point<T>>& points) {
  if (points.size() > 9)
    throw std::invalid_argument("max_lgg_bruteforce: guarded to n <= 9");
  GeoGraph<T> base;
  base.points = points;
  base.convex = points.size() >= 3 && is_convex_position(points);
  auto cand = all_pairs(points);
  const std::size_t m = cand.size();
  std::vector<std::uint64_t> conflict(m, 0);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      bool share = cand[a].first == cand[b].first || cand[a].first == cand[b].second ||
                   cand[a].second == cand[b].first || cand[a].second == cand[b].second;
      if (share && edges_conflict(base, cand[a], cand[b])) {
        conflict[a] |= std::uint64_t(1) << b;
        conflict[b] |= std::uint64_t(1) << a;
      }
    }
  std::uint64_t best_mask = 0;
  std::size_t best = 0;
  // DFS over candidates in index order; prune by remaining count.
  auto rec = [&](auto&& self, std::size_t idx, std::uint64_t chosen,
                 std::size_t count) -> void {
    if (count + (m - idx) <= best) return;
    if (idx == m) {
      if (count > best) { best = count; best_mask = chosen; }
      return;
    }
    bool feasible = true;
    for (std::size_t b = 0; b < idx && feasible; ++b)
      if ((chosen >> b & 1) && (conflict[b] >> idx & 1)) feasible = false;
    if (feasible)
      self(self, idx + 1, chosen | (std::uint64_t(1) << idx), count + 1);
    self(self, idx + 1, chosen, count);
  };
  rec(rec, 0, 0, 0);
  GeoGraph<T> witness = base;
  for (std::size_t a = 0; a < m; ++a)
    if (best_mask >> a & 1) witness.edges.push_back(cand[a]);
  witness.normalize();
  return {best, witness};
}

}  // namespace cpg
