#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "cpg/bounds.hpp"
#include "cpg/decompose.hpp"
#include "cpg/geograph.hpp"
#include "cpg/rational.hpp"
#include "json.hpp"

namespace cpg::io {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Point sets. Rational coordinates travel as canonical "num/den" strings.
// ---------------------------------------------------------------------------

inline json point_set_to_json(const std::vector<Point<Rat>>& pts) {
  json arr = json::array();
  for (const auto& p : pts)
    arr.push_back({to_fraction_string(p.x), to_fraction_string(p.y)});
  return json{{"mode", "rational"}, {"points", arr}};
}

inline json point_set_to_json(const std::vector<Point<double>>& pts) {
  json arr = json::array();
  for (const auto& p : pts) arr.push_back({p.x, p.y});
  return json{{"mode", "float"}, {"points", arr}};
}

struct ParsedPoints {
  bool rational = false;
  std::vector<Point<Rat>> rational_points;
  std::vector<Point<double>> float_points;
};

inline ParsedPoints point_set_from_json(const json& j) {
  ParsedPoints out;
  std::string mode = j.at("mode").get<std::string>();
  if (mode == "rational") {
    out.rational = true;
    for (const auto& p : j.at("points"))
      out.rational_points.push_back({parse_fraction(p.at(0).get<std::string>()),
                                     parse_fraction(p.at(1).get<std::string>())});
  } else if (mode == "float") {
    for (const auto& p : j.at("points"))
      out.float_points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  } else {
    throw std::invalid_argument("point_set_from_json: unknown mode " + mode);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Geometric graphs.
// ---------------------------------------------------------------------------

template <class T>
json graph_to_json(const GeoGraph<T>& g) {
  json edges = json::array();
  for (const auto& [i, j] : g.edges) edges.push_back({i, j});
  return json{{"points", point_set_to_json(g.points)}, {"edges", edges}};
}

template <class T>
GeoGraph<T> graph_from_json_typed(const json& j, const std::vector<Point<T>>& pts) {
  GeoGraph<T> g;
  g.points = pts;
  for (const auto& e : j.at("edges"))
    g.edges.push_back(make_edge(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>()));
  g.convex = g.points.size() >= 3 && is_convex_position(g.points);
  g.normalize();
  return g;
}

// ---------------------------------------------------------------------------
// Ordered bipartite graphs.
// ---------------------------------------------------------------------------

inline json obg_to_json(const Obg& g) {
  json edges = json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  return json{{"u_count", g.u_count()}, {"v_count", g.v_count()}, {"edges", edges}};
}

inline Obg obg_from_json(const json& j) {
  std::vector<ObgEdge> edges;
  for (const auto& e : j.at("edges"))
    edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  return Obg(j.at("u_count").get<int>(), j.at("v_count").get<int>(), std::move(edges));
}

// ---------------------------------------------------------------------------
// Decomposition bundle / certificates / reports.
// ---------------------------------------------------------------------------

namespace detail {

inline json edge_list_to_json(const std::vector<Edge>& es) {
  json arr = json::array();
  for (const auto& [i, j] : es) arr.push_back({i, j});
  return arr;
}

inline json map_to_json(const std::vector<std::size_t>& m) {
  json arr = json::array();
  for (std::size_t i = 1; i < m.size(); ++i) arr.push_back(m[i]);
  return arr;
}

}  // namespace detail

template <class T>
json decomposition_to_json(const Decomposition<T>& d) {
  return json{{"source", graph_to_json(d.source)},
              {"pair", {d.pair.first, d.pair.second}},
              {"g1", obg_to_json(d.g1)},
              {"g2", obg_to_json(d.g2)},
              {"u_map1", detail::map_to_json(d.u_map1)},
              {"v_map1", detail::map_to_json(d.v_map1)},
              {"u_map2", detail::map_to_json(d.u_map2)},
              {"v_map2", detail::map_to_json(d.v_map2)},
              {"noncrossing_dropped", detail::edge_list_to_json(d.noncrossing_dropped)},
              {"left_trimmed", detail::edge_list_to_json(d.left_trimmed)},
              {"right_trimmed", detail::edge_list_to_json(d.right_trimmed)}};
}

inline json certificate_to_json(const BoundCertificate& c) {
  json steps = json::array();
  for (const auto& s : c.trace)
    steps.push_back({{"depth", s.depth},
                     {"n", s.n},
                     {"s1", s.s1},
                     {"s2", s.s2},
                     {"crossing_charge", s.crossing_charge},
                     {"terminals", s.terminals}});
  return json{{"total_bound", c.total_bound}, {"trace", steps}};
}

// ---------------------------------------------------------------------------
// CSV. Fixed schema: experiment,name,n,seed,check,value,bound,pass
// ---------------------------------------------------------------------------

inline std::string csv_header() { return "experiment,name,n,seed,check,value,bound,pass"; }

inline std::string csv_row(const std::string& experiment, const std::string& name,
                           std::size_t n, std::uint64_t seed, const std::string& check,
                           long long value, long long bound, bool pass) {
  return experiment + "," + name + "," + std::to_string(n) + "," +
         std::to_string(seed) + "," + check + "," + std::to_string(value) + "," +
         std::to_string(bound) + "," + (pass ? "1" : "0");
}

// ---------------------------------------------------------------------------
// SVG export. Fixed canvas, fixed styles, fixed-precision coordinates.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

struct SvgFrame {
  double minx, miny, scale;
  double map_x(double x) const { return 40.0 + (x - minx) * scale; }
  double map_y(double y) const { return 760.0 - (y - miny) * scale; }
};

inline SvgFrame svg_frame(const std::vector<Point<double>>& pts) {
  double minx = pts[0].x, maxx = pts[0].x, miny = pts[0].y, maxy = pts[0].y;
  for (const auto& p : pts) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  }
  double span = std::max({maxx - minx, maxy - miny, 1e-9});
  return {minx, miny, 720.0 / span};
}

inline void svg_edge(std::string& s, const SvgFrame& f, const Point<double>& a,
                     const Point<double>& b, const std::string& style) {
  s += "<line x1=\"" + fmt(f.map_x(a.x)) + "\" y1=\"" + fmt(f.map_y(a.y)) +
       "\" x2=\"" + fmt(f.map_x(b.x)) + "\" y2=\"" + fmt(f.map_y(b.y)) + "\" " +
       style + "/>\n";
}

inline void svg_points(std::string& s, const SvgFrame& f,
                       const std::vector<Point<double>>& pts) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double x = f.map_x(pts[i].x), y = f.map_y(pts[i].y);
    s += "<circle cx=\"" + fmt(x) + "\" cy=\"" + fmt(y) +
         "\" r=\"4\" fill=\"black\"/>\n";
    s += "<text x=\"" + fmt(x + 6.0) + "\" y=\"" + fmt(y - 6.0) +
         "\" font-size=\"12\">" + std::to_string(i) + "</text>\n";
  }
}

inline const char* kSvgHeader =
    "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
    "viewBox=\"0 0 800 800\">\n";

}  // namespace detail

inline std::string export_svg(const GeoGraph<double>& g) {
  if (g.points.empty()) throw std::invalid_argument("export_svg: empty point set");
  auto f = detail::svg_frame(g.points);
  std::string s = detail::kSvgHeader;
  for (const auto& [i, j] : g.edges)
    detail::svg_edge(s, f, g.points[i], g.points[j],
                     "stroke=\"black\" stroke-width=\"1.5\"");
  detail::svg_points(s, f, g.points);
  s += "</svg>\n";
  return s;
}

inline std::string export_svg(const Decomposition<double>& d) {
  const auto& g = d.source;
  if (g.points.empty()) throw std::invalid_argument("export_svg: empty point set");
  auto f = detail::svg_frame(g.points);
  std::string s = detail::kSvgHeader;
  auto in = [](const std::vector<Edge>& es, const Edge& e) {
    return std::find(es.begin(), es.end(), e) != es.end();
  };
  std::vector<Edge> g1_edges, g2_edges;
  for (const auto& [u, v] : d.g1.edges())
    g1_edges.push_back(make_edge(d.u_map1[static_cast<std::size_t>(u)],
                                 d.v_map1[static_cast<std::size_t>(v)]));
  for (const auto& [u, v] : d.g2.edges())
    g2_edges.push_back(make_edge(d.u_map2[static_cast<std::size_t>(u)],
                                 d.v_map2[static_cast<std::size_t>(v)]));
  for (const Edge& e : g.edges) {
    std::string style;
    if (in(g1_edges, e))
      style = "stroke=\"#1f5fbf\" stroke-width=\"2\"";
    else if (in(g2_edges, e))
      style = "stroke=\"#bf3f1f\" stroke-width=\"2\"";
    else
      style = "stroke=\"#999999\" stroke-width=\"1\" stroke-dasharray=\"4 3\"";
    detail::svg_edge(s, f, g.points[e.first], g.points[e.second], style);
  }
  detail::svg_points(s, f, g.points);
  s += "</svg>\n";
  return s;
}

}  // namespace cpg::io
