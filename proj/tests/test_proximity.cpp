#include <catch2/catch_amalgamated.hpp>

#include "cpg/gen.hpp"
#include "cpg/geograph.hpp"
#include "cpg/rational.hpp"

using namespace cpg;

namespace {
const std::vector<Point<Rat>> kSquare = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
}

TEST_CASE("unit distance graph of the unit square") {
  auto g = build_udg(kSquare, Rat(0));
  CHECK(g.convex);
  REQUIRE(g.edges.size() == 4);  // the four sides; diagonals have length sqrt 2
  CHECK(g.edges == std::vector<Edge>{{0, 1}, {0, 3}, {1, 2}, {2, 3}});
  CHECK_THROWS_AS(build_udg(kSquare, Rat(1, 100)), std::invalid_argument);
}

TEST_CASE("float unit distances honor the tolerance") {
  std::vector<Point<double>> pts = {{0, 0}, {1 + 1e-12, 0}, {3, 0}};
  auto g = build_udg(pts, 1e-9);
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0] == Edge{0, 1});
  CHECK(build_udg(pts, 0.0).edges.empty());
}

TEST_CASE("gabriel graph of the square drops blocked diagonals") {
  // Each diagonal's diameter disk passes through the other two corners and
  // the disk is closed, so only the four sides survive.
  auto g = build_gabriel(kSquare);
  CHECK(g.edges == std::vector<Edge>{{0, 1}, {0, 3}, {1, 2}, {2, 3}});
}

TEST_CASE("edge conflicts at shared endpoints") {
  GeoGraph<Rat> g;
  g.points = kSquare;
  CHECK(edges_conflict(g, make_edge(0, 2), make_edge(0, 1)));   // right base angle
  CHECK_FALSE(edges_conflict(g, make_edge(0, 1), make_edge(0, 3)));
  CHECK_THROWS_AS(edges_conflict(g, make_edge(0, 1), make_edge(2, 3)),
                  std::invalid_argument);
}

TEST_CASE("lgg validity check finds the violating pair") {
  GeoGraph<Rat> g;
  g.points = kSquare;
  g.edges = {{0, 1}, {0, 2}};
  auto rep = check_lgg(g);
  CHECK_FALSE(rep.valid);
  REQUIRE(rep.violation.has_value());
  g.edges = {{0, 1}, {0, 3}, {1, 2}, {2, 3}};
  CHECK(is_valid_lgg(g));
}

TEST_CASE("greedy maximal construction matches brute force on the square") {
  auto greedy = greedy_maximal_lgg(kSquare, lexicographic_edge_order(kSquare));
  auto [best, witness] = max_lgg_bruteforce(kSquare);
  CHECK(best == 4);
  CHECK(greedy.edges.size() == 4);
  CHECK(is_valid_lgg(greedy));
  CHECK(is_valid_lgg(witness));
}

TEST_CASE("greedy output is always a valid maximal graph") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    auto pd = gen_random_convex(8, seed);
    std::vector<Point<Rat>> pts;
    for (auto& p : pd) pts.push_back({rat_from_double(p.x), rat_from_double(p.y)});
    auto g = greedy_maximal_lgg(pts, shuffled_edge_order(pts, seed));
    CHECK(is_valid_lgg(g));
    // maximal: every rejected pair conflicts with something chosen
    for (const Edge& e : all_pairs(pts)) {
      if (std::binary_search(g.edges.begin(), g.edges.end(), e)) continue;
      bool conflicts = false;
      for (const Edge& h : g.edges) {
        bool share = e.first == h.first || e.first == h.second ||
                     e.second == h.first || e.second == h.second;
        if (share && e != h && edges_conflict(g, e, h)) { conflicts = true; break; }
      }
      CHECK(conflicts);
    }
  }
}

TEST_CASE("unit polygon generator yields exactly n unit sides") {
  for (int n = 7; n <= 12; ++n) {
    auto pts = gen_regular_unit_polygon(n);
    auto g = build_udg(pts, 1e-9);
    INFO("n=" << n);
    CHECK(g.edges.size() == std::size_t(n));
    CHECK(g.convex);
  }
}
