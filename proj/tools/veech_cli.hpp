#pragma once

// The `veech` command line. run() is separate from main() so tests can drive
// it with captured streams.
//
// Exit codes: 0 success, 1 a check failed, 2 usage error, 3 resource cap hit.

#include <CLI/CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "veech/veech.hpp"

namespace veech::cli {

enum Exit : int { ok = 0, check_failed = 1, usage = 2, resource = 3 };

// Known component counts of G_N for N = 1..28, used by table-cn as the
// reference the computation is compared against.
inline const std::vector<std::size_t>& reference_cn() {
  static const std::vector<std::size_t> v{1, 5, 1, 8, 1, 5, 3, 8, 1, 5, 1, 8, 1, 15,
                                          1, 8, 3, 5, 1, 8, 3, 5, 3, 8, 1, 5, 1, 24};
  return v;
}

struct SurfaceArgs {
  std::string name;
  long D = 8;
  int eps = 0;
  bool D_given = false;

  void attach(CLI::App* app) {
    app->add_option("--surface", name, "Prototype by name: L8, L12, L5-, L17+ (spin suffix + or -)");
    app->add_option("--D", D, "Discriminant D of the prototype L_{D,eps}")
        ->check(CLI::Range(5L, 1000000L))
        ->each([this](const std::string&) { D_given = true; });
    app->add_option("--eps", eps, "Spin eps in {0, +1, -1}; 0 needs D = 0 mod 4")->check(CLI::IsMember({0, 1, -1}));
  }

  const SurfaceProto& resolve() const {
    if (!name.empty()) {
      if (D_given) throw CLI::ValidationError("--surface and --D are mutually exclusive");
      return SurfaceProto::by_name(name);
    }
    return SurfaceProto::get(D, eps);
  }
};

// Writes to --out when given, else to the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path), fallback_(fallback) {}
  std::ostream& stream() {
    if (path_.empty()) return fallback_;
    if (!file_) {
      file_ = std::make_unique<std::ofstream>(path_, std::ios::binary);
      if (!*file_) throw CLI::ValidationError("cannot open output file " + path_);
    }
    return *file_;
  }

 private:
  std::string path_;
  std::ostream& fallback_;
  std::unique_ptr<std::ofstream> file_;
};

inline nlohmann::json point_json(const SurfacePoint& P) {
  return {{"point", to_string(P)}, {"x", to_string(P.x())}, {"y", to_string(P.y())},
          {"N", n_value(P).get_str()}, {"s", to_string(s_value(P))}};
}

inline nlohmann::json graph_json(const OrbitGraph& G, const std::vector<Rational>* s, const std::string& surface) {
  nlohmann::json j;
  j["schema"] = "veech.graph/1";
  j["surface"] = surface;
  j["root"] = G.root;
  j["radius"] = G.radius;
  j["truncated"] = G.truncated;
  j["generators"] = nlohmann::json::array();
  for (const auto& g : G.generators) j["generators"].push_back(to_string(g));
  const FiniteGraph simple = G.simple_view();
  j["vertices"] = nlohmann::json::array();
  for (std::uint32_t v = 0; v < G.size(); ++v) {
    nlohmann::json vj{{"id", v},
                      {"point", to_string(G.vertices[v])},
                      {"depth", G.depth[v]},
                      {"expanded", static_cast<bool>(G.expanded[v])},
                      {"external_degree", simple.external_degree(v)}};
    if (s) vj["s"] = to_string((*s)[v]);
    j["vertices"].push_back(vj);
  }
  j["edges"] = nlohmann::json::array();
  for (const auto& e : G.edges) j["edges"].push_back({{"from", e.from}, {"to", e.to}, {"label", to_string(e.label)}});
  return j;
}

inline void write_dot(std::ostream& os, const OrbitGraph& G) {
  os << "// schema: veech.graph-dot/1\n";
  os << "digraph orbit {\n";
  for (std::uint32_t v = 0; v < G.size(); ++v)
    os << "  v" << v << " [label=\"" << to_string(G.vertices[v]) << "\"" << (v == G.root ? ", shape=box" : "")
       << "];\n";
  for (const auto& e : G.edges)
    os << "  v" << e.from << " -> v" << e.to << " [label=\"" << to_string(e.label) << "\"];\n";
  os << "}\n";
}

// Graph file for `spectral --graph`: the JSON written by explore, or any
// object with "vertices" (count or array with optional external_degree),
// "edges" (pairs or {from,to}) and optional "root".
inline std::pair<FiniteGraph, std::uint32_t> read_graph_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot read graph file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw CLI::ValidationError(std::string("malformed graph JSON: ") + e.what());
  }
  try {
    const auto& vs = j.at("vertices");
    const std::size_t n = vs.is_number() ? vs.get<std::size_t>() : vs.size();
    FiniteGraph g(n);
    if (vs.is_array())
      for (std::size_t v = 0; v < n; ++v)
        if (vs[v].contains("external_degree"))
          g.set_external_degree(static_cast<std::uint32_t>(v), vs[v]["external_degree"].get<std::uint32_t>());
    for (const auto& e : j.at("edges")) {
      if (e.is_array()) g.add_edge(e.at(0).get<std::uint32_t>(), e.at(1).get<std::uint32_t>());
      else g.add_edge(e.at("from").get<std::uint32_t>(), e.at("to").get<std::uint32_t>());
    }
    const std::uint32_t root = j.value("root", 0u);
    if (root >= n) throw domain_error("root out of range");
    return {std::move(g), root};
  } catch (const nlohmann::json::exception& e) {
    throw CLI::ValidationError(std::string("graph JSON lacks required fields: ") + e.what());
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{
      "Exact experiments on L-shaped Veech surfaces: parabolic generators A, B acting on\n"
      "connection points, the mod-N orbit invariant graph, the greedy reduction into a finite\n"
      "box on L8, Schreier-graph balls and Cheeger/spectral checks.",
      "veech"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all", "Help for every subcommand");
  unsigned threads = 1;
  std::uint64_t seed = 1;
  std::string out_path;
  app.add_option("--threads", threads, "Worker threads; results do not depend on this")
      ->check(CLI::Range(1u, 256u));
  app.add_option("--seed", seed, "Seed for every sampled point");

  std::function<int()> action;
  auto add = [&](const std::string& name, const std::string& desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--out", out_path, "Write the artifact to this file instead of stdout");
    return sub;
  };

  // table-cn
  int table_max = 28;
  CLI::App* table = add("table-cn",
                        "Component counts C(N) of the residue graph G_N on (Z/N)^4 for N = 1..max, as CSV.\n"
                        "Vertices are [a,b,c,d] with gcd(a,b,c,d,N)=1, edges A[a,b,c,d]=[a,b,c+2b,d+a] and\n"
                        "B[a,b,c,d]=[a+c+2d,b+c+d,c,d]. Compared with the known counts for N <= 28.");
  table->add_option("--max", table_max, "Largest N")->check(CLI::Range(1, 60));
  table->callback([&] {
    action = [&]() -> int {
      Sink sink(out_path, out);
      auto& os = sink.stream();
      os << "# schema: veech.table-cn/1\nN,C(N)\n";
      int mismatches = 0;
      for (int n = 1; n <= table_max; ++n) {
        const std::size_t c = ModNGraph(n).component_count();
        os << n << "," << c << "\n";
        if (n <= static_cast<int>(reference_cn().size()) && c != reference_cn()[n - 1]) {
          ++mismatches;
          err << "mismatch at N=" << n << ": computed " << c << ", reference " << reference_cn()[n - 1] << "\n";
        }
      }
      return mismatches ? check_failed : ok;
    };
  });

  // components
  std::int64_t comp_N = 2;
  std::string comp_range;
  bool comp_reps = false;
  CLI::App* comp = add("components",
                       "Connected components of G_N (undirected closure of the A, B action on residue\n"
                       "vectors). C(N) is a lower bound for the number of orbits of connection points\n"
                       "with least common denominator N on L8.");
  comp->add_option("--N", comp_N, "Modulus")->check(CLI::Range(1, 90));
  comp->add_option("--table", comp_range, "Range a..b: one CSV row per N instead");
  comp->add_flag("--representatives", comp_reps, "List one residue vector per component");
  comp->callback([&] {
    action = [&]() -> int {
      Sink sink(out_path, out);
      auto& os = sink.stream();
      if (!comp_range.empty()) {
        const auto dots = comp_range.find("..");
        if (dots == std::string::npos) throw CLI::ValidationError("--table expects a..b");
        const int a = std::stoi(comp_range.substr(0, dots));
        const int b = std::stoi(comp_range.substr(dots + 2));
        if (a < 1 || b < a || b > 90) throw CLI::ValidationError("--table range must satisfy 1 <= a <= b <= 90");
        os << "# schema: veech.components/1\nN,C(N)\n";
        for (int n = a; n <= b; ++n) os << n << "," << ModNGraph(n).component_count() << "\n";
        return ok;
      }
      const ModNGraph g(comp_N);
      os << "# schema: veech.components/1\nN,C(N),vertices\n"
         << comp_N << "," << g.component_count() << "," << g.vertex_count() << "\n";
      if (comp_reps) {
        os << "# representative,size\n";
        for (std::size_t c = 0; c < g.component_count(); ++c)
          os << to_string(g.representatives()[c]) << "," << g.component_sizes()[c] << "\n";
      }
      return ok;
    };
  });

  // multiplicativity
  std::int64_t mult_max = 28;
  CLI::App* mult = add("multiplicativity",
                       "Probe of weak multiplicativity of C(N): C(nm) against C(n)C(m) for coprime\n"
                       "n, m >= 2 with nm <= max. Reported, not asserted.");
  mult->add_option("--max", mult_max, "Largest product nm")->check(CLI::Range(2, 60));
  mult->callback([&] {
    action = [&]() -> int {
      Sink sink(out_path, out);
      auto& os = sink.stream();
      os << "# schema: veech.multiplicativity/1\nn,m,C(n),C(m),C(nm),multiplicative\n";
      std::size_t holds = 0;
      const auto rows = multiplicativity_report(mult_max);
      for (const auto& r : rows) {
        os << r.n << "," << r.m << "," << r.c_n << "," << r.c_m << "," << r.c_nm << "," << (r.holds() ? 1 : 0)
           << "\n";
        holds += r.holds();
      }
      os << "# " << holds << " of " << rows.size() << " coprime pairs multiplicative\n";
      return ok;
    };
  });

  // reduce
  SurfaceArgs red_surface;
  std::string red_point;
  bool red_trace = false;
  std::string red_json;
  CLI::App* red = add("reduce",
                      "Greedy reduction of a connection point of L8 into the box |x_i|,|y_i| <= 35+24w.\n"
                      "Prints the certifying word in operator notation (rightmost letter acts first)\n"
                      "and the reduced point. Steps: B-periodic -> A^-1 B^-1 A, A-periodic -> B^-1 A^-1 B,\n"
                      "else a power of A or B shrinking the larger irrational part.");
  red_surface.attach(red);
  red->add_option("--point", red_point, "Point literal x_r,x_i,y_r,y_i")->required();
  red->add_flag("--trace", red_trace, "Print the case and exponent of every step");
  red->add_option("--json", red_json, "Also write the result as JSON to this file");
  red->callback([&] {
    action = [&]() -> int {
      const SurfaceProto& S = red_surface.resolve();
      const SurfacePoint P = parse_point(S, red_point);
      const ReduceResult r = reduce(P);
      Sink sink(out_path, out);
      auto& os = sink.stream();
      os << "word: " << to_string(r.word) << "\n";
      os << "output: " << to_string(r.output) << "\n";
      os << "steps: " << r.steps << "\n";
      if (red_trace)
        for (std::size_t i = 0; i < r.trace.size(); ++i)
          os << "step " << i + 1 << ": case " << r.trace[i].which << " exponent " << r.trace[i].exponent
             << " measure " << to_string(r.measure[i + 1]) << "\n";
      const bool good = apply_word(P, r.word) == r.output && in_S(r.output);
      if (!red_json.empty()) {
        nlohmann::json j{{"schema", "veech.reduce/1"},
                         {"input", to_string(P)},
                         {"word", to_string(r.word)},
                         {"output", to_string(r.output)},
                         {"steps", r.steps},
                         {"replay_ok", good}};
        std::ofstream f(red_json);
        if (!f) throw CLI::ValidationError("cannot open " + red_json);
        f << j.dump(2) << "\n";
      }
      return good ? ok : check_failed;
    };
  });

  // orbit-bracket
  std::int64_t ob_N = 1;
  std::string ob_json;
  CLI::App* ob = add("orbit-bracket",
                     "Bracket for the number of orbits of connection points of L8 with denominator N:\n"
                     "lower = C(N); upper = components of the graph on S cap P_N joining Q to the\n"
                     "reduction of A^{+-1} Q and B^{+-1} Q. Points with a finite orbit are reported apart.");
  ob->add_option("--N", ob_N, "Denominator")->check(CLI::Range(1, 4));
  ob->add_option("--json", ob_json, "Write the bracket as JSON to this file");
  ob->callback([&] {
    action = [&]() -> int {
      const OrbitBracket b = orbit_class_bracket(ob_N, threads);
      Sink sink(out_path, out);
      auto& os = sink.stream();
      os << "N: " << b.N << "\nlower: " << b.lower << "\nupper: " << b.upper << "\npoints: " << b.points
         << "\nperiodic_points: " << b.periodic_points << "\nnonperiodic_components: " << b.nonperiodic_components
         << "\n";
      if (!ob_json.empty()) {
        nlohmann::json j{{"schema", "veech.orbit-bracket/1"},
                         {"N", b.N},
                         {"lower", b.lower},
                         {"upper", b.upper},
                         {"points", b.points},
                         {"periodic_points", b.periodic_points},
                         {"nonperiodic_components", b.nonperiodic_components},
                         {"component_sizes", b.component_size}};
        nlohmann::json periodic = nlohmann::json::array();
        for (std::size_t i = 0; i < b.vertices.size(); ++i)
          if (b.periodic[i]) periodic.push_back(to_string(b.vertices[i]));
        j["periodic"] = periodic;
        std::ofstream f(ob_json);
        if (!f) throw CLI::ValidationError("cannot open " + ob_json);
        f << j.dump(2) << "\n";
      }
      return b.lower <= b.upper ? ok : check_failed;
    };
  });

  // explore / classify share the ball options
  SurfaceArgs ex_surface;
  std::string ex_point;
  int ex_radius = 2;
  bool ex_g2 = false;
  std::string ex_format = "json";
  std::size_t ex_cap = 2000000;
  CLI::App* ex = add("explore",
                     "Ball in the Schreier graph of the orbit of a point: vertices are orbit points,\n"
                     "edges the generators A^{+-1}, B^{+-1}. With --g2, the pruned graph G'' instead:\n"
                     "edges A^{+-k}, B^{+-l} with k, l the smallest multiples of N above the growth\n"
                     "thresholds, centred at the component's minimum of s = |x_i|+|y_i|.");
  ex_surface.attach(ex);
  ex->add_option("--point", ex_point, "Point literal x_r,x_i,y_r,y_i")->required();
  ex->add_option("--radius", ex_radius, "Ball radius")->check(CLI::Range(0, 64));
  ex->add_flag("--g2", ex_g2, "Explore G'' instead of the full Schreier graph");
  ex->add_option("--format", ex_format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
  ex->add_option("--cap", ex_cap, "Vertex cap; exceeding it exits with code 3");
  ex->callback([&] {
    action = [&]() -> int {
      const SurfaceProto& S = ex_surface.resolve();
      const SurfacePoint P = parse_point(S, ex_point);
      ExpandOptions opt{ex_cap, threads};
      OrbitGraph G;
      std::vector<Rational> s;
      if (ex_g2) {
        G2Ball b = build_G2(P, ex_radius, opt);
        G = std::move(b.ball);
        s = std::move(b.s);
      } else {
        G = expand_ball(P, {{Gen::A, 1}, {Gen::A, -1}, {Gen::B, 1}, {Gen::B, -1}}, ex_radius, opt);
        for (const auto& v : G.vertices) s.push_back(s_value(v));
      }
      Sink sink(out_path, out);
      if (ex_format == "dot") write_dot(sink.stream(), G);
      else sink.stream() << graph_json(G, &s, S.name()).dump(1) << "\n";
      if (G.truncated) {
        err << "vertex cap " << ex_cap << " reached; partial ball written\n";
        return resource;
      }
      return ok;
    };
  });

  SurfaceArgs cl_surface;
  std::string cl_point;
  int cl_radius = 3;
  CLI::App* cl = add("classify",
                     "Local shape of the G'' component of a point: Tree4 (4-valent tree, s increasing\n"
                     "away from the root), RootLooped4 (root periodic under one generator, carrying\n"
                     "that generator's loop and two tree edges), or Other with the violations found.");
  cl_surface.attach(cl);
  cl->add_option("--point", cl_point, "Point literal x_r,x_i,y_r,y_i")->required();
  cl->add_option("--radius", cl_radius, "Ball radius")->check(CLI::Range(0, 12));
  cl->callback([&] {
    action = [&]() -> int {
      const SurfaceProto& S = cl_surface.resolve();
      const SurfacePoint P = parse_point(S, cl_point);
      const G2Ball b = build_G2(P, cl_radius, ExpandOptions{2000000, threads});
      const ComponentShape shape = classify_component(b);
      Sink sink(out_path, out);
      nlohmann::json j{{"schema", "veech.classify/1"},
                       {"surface", S.name()},
                       {"start", to_string(P)},
                       {"root", to_string(b.ball.vertices[b.ball.root])},
                       {"k", b.thresholds.k},
                       {"l", b.thresholds.l},
                       {"radius", cl_radius},
                       {"vertices", shape.vertices},
                       {"kind", to_string(shape.kind)},
                       {"violations", shape.violations}};
      sink.stream() << j.dump(2) << "\n";
      if (b.ball.truncated) return resource;
      return shape.kind == ShapeKind::Other ? check_failed : ok;
    };
  });

  // verify-lemmas
  SurfaceArgs vl_surface;
  LemmaConfig vl;
  CLI::App* vlc = add("verify-lemmas",
                      "Sampled checks of the growth lemmas for s = |x_i|+|y_i| under A^k, B^l:\n"
                      "growth_B (A- not B-periodic, |l| >= l0), growth_A (mirror), sign_A / sign_B\n"
                      "(Delta of A^k and A^-k have opposite nonzero signs past k0; same for B),\n"
                      "three_of_four (neither periodic, k > k1, l > l1: three of four images grow).");
  vl_surface.attach(vlc);
  vlc->add_option("--samples", vl.samples, "Samples per lemma");
  vlc->add_option("--N-max", vl.n_max, "Denominators drawn from 1..N-max")->check(CLI::Range(1, 1000));
  vlc->add_option("--bound", vl.bound, "Irrational numerators drawn from [-bound, bound]")
      ->check(CLI::Range(1, 1000000000));
  vlc->callback([&] {
    action = [&]() -> int {
      const SurfaceProto& S = vl_surface.resolve();
      vl.seed = seed;
      vl.threads = threads;
      Sink sink(out_path, out);
      auto& os = sink.stream();
      os << "# schema: veech.verify-lemmas/1\nsurface,lemma,samples,checks,violations\n";
      std::size_t bad = 0;
      for (Lemma l : all_lemmas()) {
        const LemmaReport r = check_lemma(S, l, vl);
        os << r.surface << "," << to_string(l) << "," << r.samples << "," << r.checks << "," << r.violations << "\n";
        for (const auto& w : r.witnesses) err << to_string(l) << ": " << w << "\n";
        bad += r.violations;
      }
      return bad ? check_failed : ok;
    };
  });

  // tree-cheeger
  long tc_k = 2;
  int tc_n = 8;
  int tc_depth = 4;
  std::size_t tc_size = 12;
  CLI::App* tc = add("tree-cheeger",
                     "Cheeger constants c(M) = |boundary M|/|M| in trees: the ball profile c(B_n) of the\n"
                     "2k-regular tree (limit (2k-2)/(2k-1)), and an exhaustive search over connected\n"
                     "root-containing sets of the 4-valent root-looped tree (expected minimum 2/3).");
  tc->add_option("--k", tc_k, "Half the valency of the regular tree")->check(CLI::Range(1L, 50L));
  tc->add_option("--n-max", tc_n, "Largest ball radius")->check(CLI::Range(1, 60));
  tc->add_option("--depth", tc_depth, "Truncation depth of the root-looped tree")->check(CLI::Range(1, 8));
  tc->add_option("--max-size", tc_size, "Largest subset size in the search")->check(CLI::Range(1, 16));
  tc->callback([&] {
    action = [&]() -> int {
      Sink sink(out_path, out);
      auto& os = sink.stream();
      os << "# schema: veech.tree-cheeger/1\nn,c(B_n),decimal\n";
      const auto prof = tree_cheeger_profile(tc_k, tc_n);
      for (int n = 1; n <= tc_n; ++n)
        os << n << "," << to_string(prof[n - 1]) << "," << prof[n - 1].get_d() << "\n";
      const auto search = min_cheeger_connected(root_looped_tree(tc_depth), 0, tc_size);
      os << "# root-looped tree depth " << tc_depth << ", sets up to " << tc_size << ": min c = "
         << to_string(search.minimum) << " over " << search.subsets << " connected sets\n";
      return ok;
    };
  });

  // spectral
  std::string sp_graph;
  int sp_radius = 3;
  std::uint32_t sp_tree = 0;
  double sp_cheeger = 2.0 / 3.0;
  CLI::App* sp = add("spectral",
                     "Dirichlet bottom of the combinatorial Laplacian on a ball: the minimum of\n"
                     "sum_edges (b(i)-b(j))^2 / sum b(i)^2 over b supported in the ball, an upper bound\n"
                     "for the bottom of the spectrum. Reported against the Cheeger sandwich\n"
                     "c^2/(2k) <= mu0 <= k c.");
  sp->add_option("--graph", sp_graph, "Graph JSON (as written by explore)");
  sp->add_option("--tree", sp_tree, "Use the regular tree of this valency instead")->check(CLI::Range(2u, 64u));
  sp->add_option("--support-radius", sp_radius, "Radius of the support ball around the root")->check(CLI::Range(0, 40));
  sp->add_option("--cheeger", sp_cheeger, "Cheeger constant used in the sandwich");
  sp->callback([&] {
    action = [&]() -> int {
      if (sp_graph.empty() == (sp_tree == 0)) throw CLI::ValidationError("give exactly one of --graph, --tree");
      FiniteGraph g;
      std::uint32_t root = 0;
      if (sp_tree) {
        g = regular_tree(sp_tree, sp_radius + 1);
      } else {
        std::tie(g, root) = read_graph_json(sp_graph);
      }
      const auto support = g.ball(root, sp_radius);
      const DirichletResult d = dirichlet_mu0(g, support);
      const double k = g.max_valency();
      const SandwichReport rep = cheeger_sandwich_check(sp_cheeger, k, d.mu0);
      Sink sink(out_path, out);
      nlohmann::json j{{"schema", "veech.spectral/1"},
                       {"support", support.size()},
                       {"mu0", d.mu0},
                       {"residual", d.residual},
                       {"method", d.method},
                       {"k", k},
                       {"cheeger", sp_cheeger},
                       {"lower", rep.lower},
                       {"upper", rep.upper},
                       {"lower_holds", rep.lower_holds},
                       {"upper_holds", rep.upper_holds}};
      sink.stream() << j.dump(2) << "\n";
      // The Dirichlet value is an upper bound for the bottom of the spectrum,
      // so only the upper side of the sandwich is a check.
      return rep.upper_holds ? ok : check_failed;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }
  try {
    return action ? action() : usage;
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << "\n";
    return usage;
  } catch (const resource_error& e) {
    err << "resource cap: " << e.what() << "\n";
    return resource;
  } catch (const domain_error& e) {
    err << "invalid input: " << e.what() << "\n";
    return usage;
  } catch (const convergence_error& e) {
    err << "numerical failure: " << e.what() << " (residual " << e.residual() << ")\n";
    return check_failed;
  } catch (const internal_error& e) {
    err << "internal error: " << e.what() << "\n";
    return check_failed;
  }
}

}  // namespace veech::cli
