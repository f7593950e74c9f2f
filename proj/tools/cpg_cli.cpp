// Command-line front end: generators, graph builders, the decomposition
// pipeline, verifiers, bounds, and exporters. JSON in, JSON/CSV/SVG out.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cpg/bounds.hpp"
#include "cpg/decompose.hpp"
#include "cpg/gen.hpp"
#include "cpg/geograph.hpp"
#include "cpg/io.hpp"
#include "cpg/obg.hpp"
#include "cpg/suite.hpp"

namespace {

using cpg::io::json;

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void write_json(const std::string& path, const json& j) {
  write_text(path, j.dump(2) + "\n");
}

struct LoadedGraph {
  bool rational = false;
  cpg::GeoGraph<cpg::Rat> rg;
  cpg::GeoGraph<double> dg;
};

LoadedGraph load_graph(const std::string& path) {
  json j = read_json(path);
  auto pts = cpg::io::point_set_from_json(j.at("points"));
  LoadedGraph g;
  g.rational = pts.rational;
  if (pts.rational)
    g.rg = cpg::io::graph_from_json_typed<cpg::Rat>(j, pts.rational_points);
  else
    g.dg = cpg::io::graph_from_json_typed<double>(j, pts.float_points);
  return g;
}

// All pipeline math runs on exact rationals; float inputs convert exactly.
cpg::GeoGraph<cpg::Rat> as_rational(const LoadedGraph& g) {
  return g.rational ? g.rg : cpg::to_rational_graph(g.dg);
}

int cmd_verify_obg(const cpg::Obg& g, const std::string& lemma) {
  using cpg::StructureLemma;
  if (lemma == "prbg") {
    auto r = cpg::is_prbg(g, cpg::PrbgEngine::Fast);
    std::cout << (r.prbg ? "pass" : "fail") << "\n";
    return r.prbg ? 0 : 1;
  }
  static const std::pair<const char*, StructureLemma> structural[] = {
      {"tree-edges", StructureLemma::TreeEdges},
      {"disjoint-ranges", StructureLemma::DisjointRanges},
      {"never-meet", StructureLemma::NeverMeet},
      {"single-incidence", StructureLemma::SingleIncidence}};
  for (const auto& [name, sel] : structural)
    if (lemma == name) {
      auto rep = cpg::verify_structure(g, sel);
      std::cout << (rep.pass ? "pass" : "fail: " + rep.counterexample) << "\n";
      return rep.pass ? 0 : 1;
    }
  static const std::pair<const char*, cpg::ModuleLemma> modular[] = {
      {"fusing-matching", cpg::ModuleLemma::FusingMatching},
      {"linear-link", cpg::ModuleLemma::LinearSeparableLink},
      {"fusing-total", cpg::ModuleLemma::FusingTotalLinear},
      {"partition", cpg::ModuleLemma::Partition}};
  for (const auto& [name, sel] : modular)
    if (lemma == name) {
      auto md = cpg::detect_modules(g);
      auto rep = cpg::verify_module_lemma(g, md, sel);
      std::cout << (rep.pass ? "pass" : "fail: " + rep.counterexample) << "\n";
      return rep.pass ? 0 : 1;
    }
  throw CLI::ValidationError("--lemma", "unknown lemma selector " + lemma);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"convex-position proximity graphs and ordered bipartite bounds"};
  app.require_subcommand(1);

  std::string mode = "float";
  double tolerance = 1e-9;
  std::uint64_t seed = 1;
  std::string out;
  app.add_option("--mode", mode)->check(CLI::IsMember({"rational", "float"}));
  app.add_option("--tolerance", tolerance);
  app.add_option("--seed", seed);
  app.add_option("--out", out);
  for (auto* opt : app.get_options()) opt->configurable(false);
  app.fallthrough();

  // gen
  auto* gen = app.add_subcommand("gen", "generate a convex point set");
  std::string generator = "regular-polygon";
  int gen_n = 8;
  gen->add_option("--generator", generator)
      ->check(CLI::IsMember({"regular-polygon", "random-convex"}));
  gen->add_option("-n,--size", gen_n)->required();

  // build
  auto* build = app.add_subcommand("build", "build a graph over a point set");
  std::string build_input, build_type = "udg", build_order = "lex";
  build->add_option("--input", build_input)->required();
  build->add_option("--type", build_type)
      ->check(CLI::IsMember({"udg", "gabriel", "lgg"}));
  build->add_option("--order", build_order)->check(CLI::IsMember({"lex", "shuffled"}));

  // decompose
  auto* dec = app.add_subcommand("decompose", "antipodal split + angle partition + trim");
  std::string dec_input, dec_pair = "auto";
  dec->add_option("--input", dec_input)->required();
  dec->add_option("--pair", dec_pair);

  // verify
  auto* ver = app.add_subcommand("verify", "check a structural lemma");
  std::string ver_input, ver_corpus, ver_lemma;
  ver->add_option("--input", ver_input);
  ver->add_option("--corpus", ver_corpus);
  ver->add_option("--lemma", ver_lemma)->required();

  // bound
  auto* bnd = app.add_subcommand("bound", "divide-and-conquer edge bound certificate");
  std::string bnd_input;
  bnd->add_option("--input", bnd_input)->required();

  // maxsearch
  auto* mx = app.add_subcommand("maxsearch", "exact maximum edges over PRBGs");
  int mx_nu = 3, mx_nv = 3;
  mx->add_option("--nu", mx_nu)->required();
  mx->add_option("--nv", mx_nv)->required();

  // genlb
  auto* glb = app.add_subcommand("genlb", "lower-bound generator");
  int glb_k = 4;
  glb->add_option("--k", glb_k)->required();

  // optimize
  auto* opt = app.add_subcommand("optimize", "unit-distance local search");
  int opt_n = 12, opt_iters = 2000;
  opt->add_option("-n,--size", opt_n)->required();
  opt->add_option("--iterations", opt_iters);

  // suite
  auto* sui = app.add_subcommand("suite", "run the experiment pipeline");
  std::string sui_name = "suite", sui_gen = "regular-polygon", sui_seeds = "1";
  int sui_min = 8, sui_max = 16;
  sui->add_option("--name", sui_name);
  sui->add_option("--generator", sui_gen);
  sui->add_option("--min", sui_min);
  sui->add_option("--max", sui_max);
  sui->add_option("--seeds", sui_seeds);

  // export-svg
  auto* svg = app.add_subcommand("export-svg", "render a graph or decomposition");
  std::string svg_input;
  svg->add_option("--input", svg_input)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      auto pts = generator == "regular-polygon" ? cpg::gen_regular_unit_polygon(gen_n)
                                                : cpg::gen_random_convex(gen_n, seed);
      if (mode == "rational") {
        std::vector<cpg::Point<cpg::Rat>> rp;
        for (const auto& p : pts)
          rp.push_back({cpg::rat_from_double(p.x), cpg::rat_from_double(p.y)});
        write_json(out, cpg::io::point_set_to_json(rp));
      } else {
        write_json(out, cpg::io::point_set_to_json(pts));
      }
      return 0;
    }
    if (build->parsed()) {
      json pj = read_json(build_input);
      auto pts = cpg::io::point_set_from_json(pj.contains("points") ? pj.at("points") : pj);
      auto run = [&](const auto& points, auto tol) -> json {
        using T = std::decay_t<decltype(tol)>;
        cpg::GeoGraph<T> g;
        if (build_type == "udg")
          g = cpg::build_udg(points, tol);
        else if (build_type == "gabriel")
          g = cpg::build_gabriel(points);
        else
          g = cpg::greedy_maximal_lgg(
              points, build_order == "lex" ? cpg::lexicographic_edge_order(points)
                                           : cpg::shuffled_edge_order(points, seed));
        return cpg::io::graph_to_json(g);
      };
      if (pts.rational)
        write_json(out, run(pts.rational_points, cpg::Rat(0)));
      else
        write_json(out, run(pts.float_points, tolerance));
      return 0;
    }
    if (dec->parsed()) {
      auto g = as_rational(load_graph(dec_input));
      std::optional<std::pair<std::size_t, std::size_t>> pair;
      if (dec_pair != "auto") {
        auto comma = dec_pair.find(',');
        if (comma == std::string::npos)
          throw CLI::ValidationError("--pair", "expected auto or i,j");
        pair = {std::stoul(dec_pair.substr(0, comma)),
                std::stoul(dec_pair.substr(comma + 1))};
      }
      auto d = cpg::decompose_full(g, pair);
      write_json(out, cpg::io::decomposition_to_json(d));
      return 0;
    }
    if (ver->parsed()) {
      std::vector<std::string> inputs;
      if (!ver_input.empty()) inputs.push_back(ver_input);
      if (!ver_corpus.empty()) {
        namespace fs = std::filesystem;
        for (const auto& e : fs::directory_iterator(ver_corpus))
          if (e.path().extension() == ".json") inputs.push_back(e.path().string());
        std::sort(inputs.begin(), inputs.end());
      }
      if (inputs.empty())
        throw CLI::ValidationError("verify", "need --input or --corpus");
      int rc = 0;
      for (const auto& path : inputs) {
        auto g = cpg::io::obg_from_json(read_json(path));
        rc |= cmd_verify_obg(g, ver_lemma);
      }
      return rc;
    }
    if (bnd->parsed()) {
      auto g = cpg::io::obg_from_json(read_json(bnd_input));
      auto cert = cpg::dnc_edge_bound(g);
      std::cout << "edges " << g.edge_count() << " bound " << cert.total_bound << "\n";
      if (!out.empty()) write_json(out, cpg::io::certificate_to_json(cert));
      return 0;
    }
    if (mx->parsed()) {
      auto r = cpg::max_prbg_edges_exact(mx_nu, mx_nv);
      std::cout << "max " << r.count << "\n";
      if (!out.empty()) write_json(out, cpg::io::obg_to_json(r.witness));
      return 0;
    }
    if (glb->parsed()) {
      auto g = cpg::gen_lower_bound_prbg(glb_k);
      bool ok = cpg::is_prbg(g, cpg::PrbgEngine::Fast).prbg;
      std::cout << "n " << g.n() << " edges " << g.edge_count() << " prbg "
                << (ok ? "pass" : "FAIL") << "\n";
      if (!out.empty()) write_json(out, cpg::io::obg_to_json(g));
      return ok ? 0 : 1;
    }
    if (opt->parsed()) {
      cpg::OptimizeSchedule sched;
      sched.iterations = opt_iters;
      auto r = cpg::optimize_unit_distances(opt_n, seed, sched, tolerance);
      std::cout << "n " << opt_n << " count " << r.best_count << " recheck "
                << r.recheck_count << " target " << 2 * opt_n - 7 << "\n";
      return 0;
    }
    if (sui->parsed()) {
      cpg::ExperimentSpec spec;
      spec.name = sui_name;
      spec.generator = sui_gen;
      spec.size_lo = sui_min;
      spec.size_hi = sui_max;
      spec.tolerance = tolerance;
      spec.seeds.clear();
      std::stringstream ss(sui_seeds);
      std::string tok;
      while (std::getline(ss, tok, ',')) spec.seeds.push_back(std::stoull(tok));
      auto res = cpg::run_suite(spec);
      std::string csv = cpg::io::csv_header() + "\n";
      for (const auto& r : res.rows) csv += r + "\n";
      write_text(out, csv);
      std::cerr << "rows " << res.rows.size() << " failures " << res.failures << "\n";
      return res.failures == 0 ? 0 : 1;
    }
    if (svg->parsed()) {
      json j = read_json(svg_input);
      if (j.contains("g1")) {
        auto pts = cpg::io::point_set_from_json(j.at("source").at("points"));
        // Render in float space; rational bundles convert for display only.
        cpg::GeoGraph<double> src;
        if (pts.rational) {
          for (const auto& p : pts.rational_points)
            src.points.push_back({cpg::to_double(p.x), cpg::to_double(p.y)});
        } else {
          src.points = pts.float_points;
        }
        for (const auto& e : j.at("source").at("edges"))
          src.edges.push_back(cpg::make_edge(e.at(0).get<std::size_t>(),
                                             e.at(1).get<std::size_t>()));
        cpg::Decomposition<double> d;
        d.source = src;
        d.pair = {j.at("pair").at(0).get<std::size_t>(),
                  j.at("pair").at(1).get<std::size_t>()};
        d.g1 = cpg::io::obg_from_json(j.at("g1"));
        d.g2 = cpg::io::obg_from_json(j.at("g2"));
        auto load_map = [&](const char* key) {
          std::vector<std::size_t> m{0};
          for (const auto& x : j.at(key)) m.push_back(x.get<std::size_t>());
          return m;
        };
        d.u_map1 = load_map("u_map1");
        d.v_map1 = load_map("v_map1");
        d.u_map2 = load_map("u_map2");
        d.v_map2 = load_map("v_map2");
        write_text(out, cpg::io::export_svg(d));
      } else {
        auto g = load_graph(svg_input);
        cpg::GeoGraph<double> dg;
        if (g.rational) {
          for (const auto& p : g.rg.points)
            dg.points.push_back({cpg::to_double(p.x), cpg::to_double(p.y)});
          dg.edges = g.rg.edges;
        } else {
          dg = g.dg;
        }
        write_text(out, cpg::io::export_svg(dg));
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
