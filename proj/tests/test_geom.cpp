#include <catch2/catch_amalgamated.hpp>

#include "cpg/gen.hpp"
#include "cpg/geom.hpp"
#include "cpg/rational.hpp"

using namespace cpg;

TEST_CASE("rational round trips") {
  CHECK(rat_from_double(0.5) == Rat(1, 2));
  CHECK(rat_from_double(-3.0) == Rat(-3));
  CHECK(parse_fraction("7/4") == Rat(7, 4));
  CHECK(to_fraction_string(Rat(7, 4)) == "7/4");
  CHECK(parse_fraction(to_fraction_string(rat_from_double(0.1))) ==
        rat_from_double(0.1));
}

TEST_CASE("orientation and angle classification") {
  Point<Rat> o{0, 0}, a{1, 0}, b{0, 1};
  CHECK(orientation(o, a, b) == Orientation::Left);
  CHECK(orientation(o, b, a) == Orientation::Right);
  CHECK(orientation(o, a, Point<Rat>{2, 0}) == Orientation::Collinear);
  CHECK(angle_class(o, a, b) == AngleClass::Right);
  CHECK(angle_class(a, o, b) == AngleClass::Acute);
  CHECK(angle_class(Point<Rat>{Rat(1, 2), Rat(1, 10)}, o, a) == AngleClass::Obtuse);
}

TEST_CASE("diameter disk membership") {
  Point<Rat> a{0, 0}, b{2, 0};
  CHECK(in_diameter_disk(Point<Rat>{1, 0}, a, b));
  CHECK(in_diameter_disk(Point<Rat>{1, 1}, a, b));  // boundary counts
  CHECK_FALSE(in_diameter_disk(Point<Rat>{1, Rat(11, 10)}, a, b));
}

TEST_CASE("convex position detection") {
  std::vector<Point<Rat>> square = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(is_convex_position(square));
  auto bad = square;
  bad.push_back({Rat(1, 2), Rat(1, 2)});
  CHECK(convex_position_status(bad) == ConvexityStatus::NotConvex);
  bad = square;
  bad.push_back({0, 0});
  CHECK(convex_position_status(bad) == ConvexityStatus::Duplicate);
  std::vector<Point<Rat>> collinear = {{0, 0}, {1, 0}, {2, 0}};
  CHECK_FALSE(is_convex_position(collinear));
}

TEST_CASE("canonical ccw order pins the start point") {
  std::vector<Point<Rat>> pts = {{1, 1}, {0, 1}, {1, 0}, {0, 0}};
  auto cps = ConvexPointSet<Rat>::from_points(pts);
  REQUIRE(cps.size() == 4);
  CHECK(cps[0] == Point<Rat>{0, 0});
  CHECK(cps[1] == Point<Rat>{1, 0});
  CHECK(cps[2] == Point<Rat>{1, 1});
  CHECK(cps[3] == Point<Rat>{0, 1});
}

TEST_CASE("antipodal pairs of a square") {
  // Parallel supporting lines exist for both diagonals and both opposite
  // edge pairs; adjacent corners also admit them through the shared edge.
  std::vector<Point<Rat>> square = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  auto cps = ConvexPointSet<Rat>::from_points(square);
  auto ap = antipodal_pairs(cps);
  CHECK(ap.size() == 6);
}

TEST_CASE("antipodal pairs of odd regular polygons") {
  // Odd n: no two edges are parallel, so every vertex pairs with exactly the
  // two endpoints of its far edge, n pairs total. These intersections are
  // open, hence stable under the float -> rational conversion.
  for (int n : {5, 7, 9}) {
    auto pd = gen_regular_unit_polygon(n);
    std::vector<Point<Rat>> pr;
    for (auto& p : pd) pr.push_back({rat_from_double(p.x), rat_from_double(p.y)});
    auto cps = ConvexPointSet<Rat>::from_points(pr);
    auto ap = antipodal_pairs(cps);
    INFO("n=" << n);
    CHECK(ap.size() == std::size_t(n));
  }
}

TEST_CASE("antipodal pairs of an exactly symmetric hexagon") {
  // Opposite edges exactly parallel: n/2 diagonal pairs plus n pairs joining
  // a vertex to the neighbors of its opposite vertex, 3n/2 = 9 total.
  std::vector<Point<Rat>> hex = {{2, 0}, {1, 2}, {-1, 2}, {-2, 0}, {-1, -2}, {1, -2}};
  auto cps = ConvexPointSet<Rat>::from_points(hex);
  CHECK(antipodal_pairs(cps).size() == 9);
}

TEST_CASE("antipodal pairs of a skewed quadrilateral") {
  // Long thin quadrilateral: diagonals plus the two long-side pairs.
  std::vector<Point<Rat>> pts = {{0, 0}, {10, Rat(-1, 2)}, {11, 0}, {1, Rat(1, 2)}};
  auto cps = ConvexPointSet<Rat>::from_points(pts);
  auto ap = antipodal_pairs(cps);
  for (auto [i, j] : ap) CHECK(i < j);
  CHECK(ap.size() >= 4);
}
