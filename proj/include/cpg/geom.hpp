#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cpg/rational.hpp"

namespace cpg {

enum class Orientation { Left, Right, Collinear };
enum class AngleClass { Acute, Right, Obtuse };

template <class T>
struct Point {
  T x{};
  T y{};

  friend bool operator==(const Point& a, const Point& b) {
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
  friend bool operator<(const Point& a, const Point& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  }
};

template <class T>
T cross(const Point<T>& o, const Point<T>& a, const Point<T>& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

template <class T>
Orientation orientation(const Point<T>& a, const Point<T>& b, const Point<T>& c) {
  T s = cross(a, b, c);
  if (s > 0) return Orientation::Left;
  if (s < 0) return Orientation::Right;
  return Orientation::Collinear;
}

// Classifies the angle at `apex` spanned by rays to p and q by the sign of
// the dot product; exact for rational scalars.
template <class T>
AngleClass angle_class(const Point<T>& apex, const Point<T>& p, const Point<T>& q) {
  if (p == apex || q == apex)
    throw std::invalid_argument("angle_class: apex coincides with a ray endpoint");
  T d = (p.x - apex.x) * (q.x - apex.x) + (p.y - apex.y) * (q.y - apex.y);
  if (d > 0) return AngleClass::Acute;
  if (d < 0) return AngleClass::Obtuse;
  return AngleClass::Right;
}

template <class T>
T squared_distance(const Point<T>& p, const Point<T>& q) {
  T dx = p.x - q.x;
  T dy = p.y - q.y;
  return dx * dx + dy * dy;
}

// Closed disk with segment ab as diameter. A point at exactly a right angle
// (on the boundary circle) counts as contained.
template <class T>
bool in_diameter_disk(const Point<T>& x, const Point<T>& a, const Point<T>& b) {
  if (a == b) throw std::invalid_argument("in_diameter_disk: degenerate diameter");
  if (x == a || x == b) throw std::invalid_argument("in_diameter_disk: x is an endpoint");
  return angle_class(x, a, b) != AngleClass::Acute;
}

enum class ConvexityStatus { Convex, Duplicate, NotConvex };

namespace detail {

// Andrew monotone chain; returns hull in counterclockwise order including
// collinear boundary points only as interior rejections (strict hull).
template <class T>
std::vector<Point<T>> convex_hull_ccw(std::vector<Point<T>> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<Point<T>> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace detail

template <class T>
ConvexityStatus convex_position_status(const std::vector<Point<T>>& points) {
  if (points.size() < 3)
    throw std::invalid_argument("convex_position_status: need at least 3 points");
  std::vector<Point<T>> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    return ConvexityStatus::Duplicate;
  auto hull = detail::convex_hull_ccw(points);
  return hull.size() == points.size() ? ConvexityStatus::Convex
                                      : ConvexityStatus::NotConvex;
}

template <class T>
bool is_convex_position(const std::vector<Point<T>>& points) {
  return convex_position_status(points) == ConvexityStatus::Convex;
}

// Strictly convex point set stored in counterclockwise cyclic order,
// canonically starting at the lexicographically smallest point.
template <class T>
class ConvexPointSet {
 public:
  static ConvexPointSet from_points(std::vector<Point<T>> pts) {
    switch (convex_position_status(pts)) {
      case ConvexityStatus::Duplicate:
        throw std::invalid_argument("ConvexPointSet: duplicate points");
      case ConvexityStatus::NotConvex:
        throw std::invalid_argument(
            "ConvexPointSet: points not in strictly convex position");
      case ConvexityStatus::Convex:
        break;
    }
    auto hull = detail::convex_hull_ccw(std::move(pts));
    auto lo = std::min_element(hull.begin(), hull.end());
    std::rotate(hull.begin(), lo, hull.end());
    return ConvexPointSet(std::move(hull));
  }

  std::size_t size() const { return pts_.size(); }
  const Point<T>& operator[](std::size_t i) const { return pts_[i]; }
  const std::vector<Point<T>>& points() const { return pts_; }

 private:
  explicit ConvexPointSet(std::vector<Point<T>> pts) : pts_(std::move(pts)) {}
  std::vector<Point<T>> pts_;
};

namespace detail {

// v inside the closed cone swept ccw from a to b (cone span < pi).
template <class T>
bool in_cone(const Point<T>& a, const Point<T>& b, const Point<T>& v) {
  T ca = a.x * v.y - a.y * v.x;
  T cb = v.x * b.y - v.y * b.x;
  return ca >= 0 && cb >= 0;
}

template <class T>
bool cones_intersect(const Point<T>& a1, const Point<T>& b1, const Point<T>& a2,
                     const Point<T>& b2) {
  return in_cone(a1, b1, a2) || in_cone(a1, b1, b2) || in_cone(a2, b2, a1) ||
         in_cone(a2, b2, b1);
}

}  // namespace detail

// All unordered index pairs admitting parallel supporting lines with every
// other point weakly between them. Decided exactly via the outward-normal
// cones of the two vertices: (i, j) is antipodal iff cone(i) meets -cone(j).
template <class T>
std::vector<std::pair<std::size_t, std::size_t>> antipodal_pairs(
    const ConvexPointSet<T>& cps) {
  const std::size_t n = cps.size();
  // Outward normal of ccw edge k -> k+1 is the edge vector rotated clockwise.
  std::vector<Point<T>> normal(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Point<T>& a = cps[k];
    const Point<T>& b = cps[(k + 1) % n];
    normal[k] = Point<T>{b.y - a.y, a.x - b.x};
  }
  auto cone_lo = [&](std::size_t i) { return normal[(i + n - 1) % n]; };
  auto cone_hi = [&](std::size_t i) { return normal[i]; };
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Point<T> a2{-cone_lo(j).x, -cone_lo(j).y};
      Point<T> b2{-cone_hi(j).x, -cone_hi(j).y};
      if (detail::cones_intersect(cone_lo(i), cone_hi(i), a2, b2))
        out.emplace_back(i, j);
    }
  }
  return out;
}

}  // namespace cpg
