#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "cpg/geograph.hpp"

namespace cpg {

// Regular n-gon with side length exactly 1 (up to double rounding):
// circumradius 1 / (2 sin(pi/n)).
inline std::vector<Point<double>> gen_regular_unit_polygon(int n) {
  if (n < 3) throw std::invalid_argument("gen_regular_unit_polygon: n >= 3");
  const double pi = std::acos(-1.0);
  const double r = 1.0 / (2.0 * std::sin(pi / n));
  std::vector<Point<double>> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    double a = 2.0 * pi * k / n;
    pts.push_back({r * std::cos(a), r * std::sin(a)});
  }
  return pts;
}

// Rational-mode variant: exact conversion of the double coordinates, so the
// polygon is convex but its sides are only approximately unit. The flag
// reminds callers that unit-distance counts on it are not meaningful.
struct RationalPolygon {
  std::vector<Point<Rat>> points;
  bool exact_unit = false;
};

inline RationalPolygon gen_regular_unit_polygon_rational(int n) {
  RationalPolygon rp;
  for (const auto& p : gen_regular_unit_polygon(n))
    rp.points.push_back({rat_from_double(p.x), rat_from_double(p.y)});
  return rp;
}

// n points in strictly convex position: sorted angles on a seeded ellipse.
inline std::vector<Point<double>> gen_random_convex(int n, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("gen_random_convex: n >= 3");
  const double pi = std::acos(-1.0);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
  std::uniform_real_distribution<double> axis(0.8, 1.6);
  for (int attempt = 0; attempt < 100; ++attempt) {
    double a = axis(rng), b = axis(rng);
    std::vector<double> th(static_cast<std::size_t>(n));
    for (auto& t : th) t = angle(rng);
    std::sort(th.begin(), th.end());
    bool spaced = true;
    for (int i = 0; i < n; ++i) {
      double gap = i + 1 < n ? th[i + 1] - th[i] : th[0] + 2.0 * pi - th[n - 1];
      if (gap < 1e-5) spaced = false;
    }
    if (!spaced) continue;
    std::vector<Point<double>> pts;
    for (double t : th) pts.push_back({a * std::cos(t), b * std::sin(t)});
    if (is_convex_position(pts)) return pts;
  }
  throw std::runtime_error("gen_random_convex: no convex sample after 100 attempts");
}

// ---------------------------------------------------------------------------
// Unit-distance local search.
// ---------------------------------------------------------------------------

struct OptimizeSchedule {
  int iterations = 2000;
  double step = 0.05;
  double decay = 0.999;
};

struct OptimizeResult {
  std::vector<Point<double>> best_points;
  std::size_t best_count = 0;     // pairs with |d^2 - 1| <= tolerance
  std::size_t recheck_count = 0;  // same pairs re-verified at the loose tolerance
  std::vector<std::size_t> history;  // best-so-far, one entry per iteration
};

// Hill climbing over polar coordinates, starting from the regular unit
// polygon. Every accepted state is in strictly convex position, so the
// count never drops below the starting n for n >= 7.
inline OptimizeResult optimize_unit_distances(int n, std::uint64_t seed,
                                              OptimizeSchedule sched = {},
                                              double tolerance = 1e-9,
                                              double recheck_tolerance = 1e-7) {
  if (n > 40) throw std::invalid_argument("optimize_unit_distances: n <= 40");
  auto count_units = [&](const std::vector<Point<double>>& pts, double tol) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        double d2 = squared_distance(pts[i], pts[j]);
        if (std::abs(d2 - 1.0) <= tol) ++c;
      }
    return c;
  };
  auto start = gen_regular_unit_polygon(n);
  std::vector<double> theta(static_cast<std::size_t>(n)), radius(static_cast<std::size_t>(n));
  const double pi = std::acos(-1.0);
  const double r0 = 1.0 / (2.0 * std::sin(pi / n));
  for (int k = 0; k < n; ++k) {
    theta[static_cast<std::size_t>(k)] = 2.0 * pi * k / n;
    radius[static_cast<std::size_t>(k)] = r0;
  }
  auto realize = [&](const std::vector<double>& th, const std::vector<double>& rr) {
    std::vector<Point<double>> pts;
    for (int k = 0; k < n; ++k)
      pts.push_back({rr[static_cast<std::size_t>(k)] * std::cos(th[static_cast<std::size_t>(k)]),
                     rr[static_cast<std::size_t>(k)] * std::sin(th[static_cast<std::size_t>(k)])});
    return pts;
  };

  OptimizeResult res;
  res.best_points = start;
  res.best_count = count_units(start, tolerance);
  std::size_t cur_count = res.best_count;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double step = sched.step;
  for (int it = 0; it < sched.iterations; ++it) {
    int k = pick(rng);
    double dth = unit(rng) * step, dr = unit(rng) * step;
    auto th = theta;
    auto rr = radius;
    th[static_cast<std::size_t>(k)] += dth;
    rr[static_cast<std::size_t>(k)] = std::max(0.1, rr[static_cast<std::size_t>(k)] + dr);
    auto pts = realize(th, rr);
    if (is_convex_position(pts)) {
      std::size_t c = count_units(pts, tolerance);
      if (c >= cur_count) {
        cur_count = c;
        theta = th;
        radius = rr;
        if (c > res.best_count) {
          res.best_count = c;
          res.best_points = pts;
        }
      }
    }
    step *= sched.decay;
    res.history.push_back(res.best_count);
  }
  res.recheck_count = count_units(res.best_points, recheck_tolerance);
  return res;
}

}  // namespace cpg
