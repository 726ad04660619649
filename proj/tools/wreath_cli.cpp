// Command-line driver: ball, solve, gadget, verify, contrast, report.
// Exit codes: 0 all checks passed, 1 check violated, 2 usage/config error,
// 3 resource cap hit.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "wreath/experiments.hpp"
#include "wreath/io.hpp"
#include "wreath/wreath.hpp"

namespace fs = std::filesystem;
using namespace wreath;

namespace {

enum Exit { kOk = 0, kViolation = 1, kUsage = 2, kResource = 3 };

struct Options {
  std::string config_file;
  std::string graph, lamps, default_state, center;
  std::optional<long> radius;
  std::optional<std::size_t> cap, steps, horizon;
  std::string z_mode;
  std::string s_ray, q_ray;  // JSON or "family:base[:start]"
  std::optional<double> tol;
  std::optional<long> max_iter;
  std::string bc_file, paths_file, out;
  std::optional<long> tree_degree, min_radius, tree_max_radius, lamp_max_radius;
  std::optional<std::size_t> prefix;
};

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << text;
}

RaySpec parse_ray(const std::string& text) {
  if (!text.empty() && text.front() == '{') return ray_spec_from_json(Json::parse(text));
  RaySpec r;
  auto a = text.find(':');
  if (a == std::string::npos) throw InvalidArgument("ray must be family:base[:start]: " + text);
  r.family = text.substr(0, a);
  auto b = text.find(':', a + 1);
  r.base = text.substr(a + 1, b == std::string::npos ? std::string::npos : b - a - 1);
  if (b != std::string::npos) r.start = std::stoul(text.substr(b + 1));
  return r;
}

// Config file fields, overridden by whatever flags were given.
struct Resolved {
  Json cfg = Json::object();
  const Options& o;

  bool has(const char* key) const { return cfg.contains(key); }

  std::optional<GraphSpec> graph(const char* key, const std::string& flag) const {
    if (!flag.empty()) return parse_graph_shorthand(flag);
    if (cfg.contains(key)) return graph_spec_from_json(cfg[key]);
    return std::nullopt;
  }
  template <class T>
  T value(const char* key, const std::optional<T>& flag, T fallback) const {
    if (flag) return *flag;
    if (cfg.contains(key)) return cfg[key].get<T>();
    return fallback;
  }
  std::string text(const char* key, const std::string& flag, std::string fallback = {}) const {
    if (!flag.empty()) return flag;
    if (cfg.contains(key)) return cfg[key].get<std::string>();
    return fallback;
  }
  Json section(const char* key) const { return cfg.value(key, Json::object()); }
  fs::path out(const std::string& fallback) const { return text("out", o.out, fallback); }

  SolverOptions solver() const {
    SolverOptions s;
    Json j = section("solver");
    s.tol = o.tol ? *o.tol : j.value("tol", s.tol);
    s.max_iter = o.max_iter ? *o.max_iter : j.value("max_iter", s.max_iter);
    return s;
  }
  std::optional<VertexId> default_state() const {
    std::string s = text("default_state", o.default_state);
    if (s.empty()) return std::nullopt;
    return VertexId(s);
  }
};

// G itself, or G wr H when a lamp graph is configured.
struct Target {
  GraphOracle oracle;
  std::optional<LampGraph> lamp;
};

Target resolve_target(const Resolved& r) {
  auto g = r.graph("graph", r.o.graph);
  if (!g) throw InvalidArgument("no graph given (--graph or config \"graph\")");
  auto h = r.graph("lamps", r.o.lamps);
  if (!h) return {builtin_graph(*g), std::nullopt};
  LampGraph lg = make_lamp_graph(*g, *h, r.default_state());
  return {lg.oracle(), lg};
}

int cmd_ball(const Resolved& r) {
  Target t = resolve_target(r);
  VertexId center(r.text("center", r.o.center, t.oracle.root().str()));
  const long radius = r.value("radius", r.o.radius, 0L);
  BallReport rep = ball_report(t.oracle, center, radius, r.value("cap", r.o.cap, kDefaultBallCap));
  fs::path out = r.out("out/ball");
  write_file(out / "edges.csv", rep.edges_csv);
  write_file(out / "spheres.csv", rep.spheres_csv);
  write_file(out / "degrees.csv", rep.degrees_csv);
  std::cout << "ball radius " << radius << " around " << center << ": "
            << rep.ball.graph.size() << " vertices, " << rep.ball.graph.edge_count()
            << " edges -> " << out.string() << "\n";
  return kOk;
}

int cmd_solve(const Resolved& r) {
  Target t = resolve_target(r);
  FiniteGraph g;
  if (t.oracle.is_finite()) {
    g = *t.oracle.finite();
  } else {
    if (!r.o.radius && !r.has("radius"))
      throw InvalidArgument("infinite graph: give --radius for the ball to solve on");
    VertexId center(r.text("center", r.o.center, t.oracle.root().str()));
    g = ball(t.oracle, center, r.value("radius", r.o.radius, 0L),
             r.value("cap", r.o.cap, kDefaultBallCap)).graph;
  }
  Json bcj;
  if (!r.o.bc_file.empty()) bcj = load_json(r.o.bc_file);
  else if (r.has("boundary")) bcj = r.cfg["boundary"];
  else throw InvalidArgument("no boundary condition (--bc or config \"boundary\")");
  const SolverOptions opt = r.solver();
  HarmonicSolution sol = solve_dirichlet(g, boundary_from_json(bcj), opt);

  std::string csv = csv_line({"vertex", "value"});
  for (std::size_t i = 0; i < g.size(); ++i)
    csv += csv_line({g.vertex(i).str(), format_number(sol.values[i])});
  Json summary{{"vertices", g.size()},
               {"edges", g.edge_count()},
               {"residual", sol.residual},
               {"energy", sol.energy},
               {"iterations", sol.iterations},
               {"tol", opt.tol}};
  fs::path out = r.out("out/solve");
  write_file(out / "solution.csv", csv);
  write_file(out / "summary.json", summary.dump(2) + "\n");
  std::cout << summary.dump() << "\n";
  return sol.residual <= opt.tol ? kOk : kViolation;
}

GadgetConfig gadget_config(const Resolved& r) {
  GadgetConfig c;
  auto g = r.graph("graph", r.o.graph);
  if (g) c.base = *g;
  auto h = r.graph("lamps", r.o.lamps);
  if (h) c.lamps = *h;
  c.default_state = r.default_state();
  Json rays = r.section("rays");
  if (!r.o.s_ray.empty()) c.s_ray = parse_ray(r.o.s_ray);
  else if (rays.contains("s")) c.s_ray = ray_spec_from_json(rays["s"]);
  if (!r.o.q_ray.empty()) c.q_ray = parse_ray(r.o.q_ray);
  else if (rays.contains("q")) c.q_ray = ray_spec_from_json(rays["q"]);
  c.steps = r.value("steps", r.o.steps, c.steps);
  c.horizon = r.value("horizon", r.o.horizon, c.horizon);
  const std::string mode = r.text("z_mode", r.o.z_mode, "constructive");
  if (mode == "bfs") c.z_mode = ZMode::Bfs;
  else if (mode != "constructive") throw InvalidArgument("z_mode must be constructive or bfs");
  return c;
}

Json gadget_summary(const GadgetRun& run) {
  Json rows_failed = Json::array();
  for (std::size_t k = 0; k < run.checks.size(); ++k)
    if (!run.checks[k].ok()) rows_failed.push_back({{"i", k + 1}, {"problems", run.checks[k].problems}});
  return {{"steps", run.paths.size()},
          {"rows_ok", run.rows_ok()},
          {"failed_rows", rows_failed},
          {"edge_disjoint", run.disjoint.edge_disjoint},
          {"interior_vertex_disjoint", run.disjoint.interior_vertex_disjoint},
          {"first_violation", run.disjoint.first_violation.value_or("")},
          {"lamp_witness_ok", !run.witness_violation},
          {"c_hat", run.growth.c_hat},
          {"c_hat_settled", run.c_hat_settled},
          {"ok", run.ok()}};
}

int cmd_gadget(const Resolved& r) {
  GadgetRun run = run_gadget(gadget_config(r));
  fs::path out = r.out("out/gadget");
  write_file(out / "gadget.csv", gadget_csv(run));
  write_file(out / "paths.json", path_seq_to_json(run.path_seq()).dump() + "\n");
  Json summary = gadget_summary(run);
  write_file(out / "summary.json", summary.dump(2) + "\n");
  std::cout << gadget_csv(run) << summary.dump() << "\n";
  return run.ok() ? kOk : kViolation;
}

int cmd_verify(const Resolved& r) {
  if (r.o.paths_file.empty()) throw InvalidArgument("verify needs --paths");
  const PathSeq seq = path_seq_from_json(load_json(r.o.paths_file));
  if (seq.empty()) throw InvalidArgument("empty path sequence");
  bool ok = true;
  Json bad = Json::array();
  std::optional<Target> t;
  if (!r.o.graph.empty() || r.has("graph")) t = resolve_target(r);
  for (std::size_t k = 0; k < seq.size(); ++k) {
    bool simple = t ? is_simple_path(t->oracle, seq[k])
                    : std::set<VertexId>(seq[k].begin(), seq[k].end()).size() == seq[k].size();
    if (!simple) {
      ok = false;
      bad.push_back(k + 1);
    }
  }
  const DisjointReport d = check_disjoint(seq);
  const GrowthReport g = verify_linear_growth(seq);
  ok = ok && d.edge_disjoint && d.interior_vertex_disjoint;
  Json report{{"paths", seq.size()},
              {"non_simple_paths", bad},
              {"adjacency_checked", t.has_value()},
              {"edge_disjoint", d.edge_disjoint},
              {"interior_vertex_disjoint", d.interior_vertex_disjoint},
              {"first_violation", d.first_violation.value_or("")},
              {"c_hat", g.c_hat},
              {"c_hat_settled", c_hat_settles(g)},
              {"ok", ok}};
  std::cout << report.dump(2) << "\n";
  return ok ? kOk : kViolation;
}

ContrastConfig contrast_config(const Resolved& r) {
  ContrastConfig c;
  Json j = r.section("contrast");
  c.tree_degree = r.o.tree_degree ? *r.o.tree_degree : j.value("tree_degree", c.tree_degree);
  c.min_radius = r.o.min_radius ? *r.o.min_radius : j.value("min_radius", c.min_radius);
  c.tree_max_radius =
      r.o.tree_max_radius ? *r.o.tree_max_radius : j.value("tree_max_radius", c.tree_max_radius);
  c.lamp_max_radius =
      r.o.lamp_max_radius ? *r.o.lamp_max_radius : j.value("lamp_max_radius", c.lamp_max_radius);
  c.prefix = r.o.prefix ? *r.o.prefix : j.value("prefix", c.prefix);
  auto h = r.graph("lamps", r.o.lamps);
  if (h) c.lamps = *h;
  c.solver = r.solver();
  c.cap = r.value("cap", r.o.cap, c.cap);
  return c;
}

Json contrast_summary(const ContrastRun& run) {
  return {{"tree", run.tree_label},
          {"lamplighter", run.lamp_label},
          {"tree_resistance_non_increasing", run.tree_non_increasing},
          {"tree_last_relative_change", run.tree_last_relative_change},
          {"tree_converged", run.tree_converged()},
          {"lamplighter_energy_strictly_increasing", run.lamp_strictly_increasing},
          {"first_non_increasing_radius", run.first_flat_radius ? Json(*run.first_flat_radius) : Json()},
          {"truncated", run.truncated.value_or("")}};
}

bool contrast_ok(const ContrastRun& run) {
  return run.tree_non_increasing && run.tree_converged() && run.lamp_strictly_increasing;
}

int cmd_contrast(const Resolved& r) {
  ContrastRun run = run_contrast(contrast_config(r));
  fs::path out = r.out("out/contrast");
  write_file(out / "contrast.csv", contrast_csv(run));
  write_file(out / "contrast.svg", contrast_svg(run));
  Json summary = contrast_summary(run);
  write_file(out / "summary.json", summary.dump(2) + "\n");
  std::cout << contrast_csv(run) << summary.dump() << "\n";
  if (run.truncated) return kResource;
  return contrast_ok(run) ? kOk : kViolation;
}

// Standard experiment set in one go.
int cmd_report(const Resolved& r) {
  fs::path out = r.out("out/report");
  const GraphSpec k2{"complete", 2, {}};
  std::ostringstream md;
  md << "# Experiment report\n\n";
  bool ok = true;

  {
    LampGraph lg(builtin_graph({"line", 1, {}}), finite_graph(k2));
    GraphOracle o = lg.oracle();
    BallReport b = ball_report(o, o.root(), 4);
    write_file(out / "ball" / "edges.csv", b.edges_csv);
    write_file(out / "ball" / "spheres.csv", b.spheres_csv);
    write_file(out / "ball" / "degrees.csv", b.degrees_csv);
    md << "## Ball\n\nline wr complete(2), radius 4: " << b.ball.graph.size() << " vertices, "
       << b.ball.graph.edge_count() << " edges.\n\n";
  }
  for (const auto& [name, base, steps] :
       {std::tuple{"line", GraphSpec{"line", 1, {}}, 50}, std::tuple{"tree3", GraphSpec{"tree", 3, {}}, 20}}) {
    GadgetConfig c;
    c.base = base;
    c.steps = static_cast<std::size_t>(steps);
    GadgetRun run = run_gadget(c);
    write_file(out / name / "gadget.csv", gadget_csv(run));
    write_file(out / name / "paths.json", path_seq_to_json(run.path_seq()).dump() + "\n");
    ok = ok && run.ok();
    md << "## Gadget on " << base.label() << " wr complete(2), " << steps << " paths\n\n"
       << "- row bounds: " << (run.rows_ok() ? "pass" : "FAIL") << "\n"
       << "- edge-disjoint: " << (run.disjoint.edge_disjoint ? "pass" : "FAIL") << "\n"
       << "- interior-vertex-disjoint: " << (run.disjoint.interior_vertex_disjoint ? "pass" : "FAIL") << "\n"
       << "- c_hat = " << format_number(run.growth.c_hat) << ", settled: "
       << (run.c_hat_settled ? "yes" : "no") << "\n\n";
  }
  {
    ContrastRun run = run_contrast(contrast_config(r));
    write_file(out / "contrast" / "contrast.csv", contrast_csv(run));
    write_file(out / "contrast" / "contrast.svg", contrast_svg(run));
    ok = ok && contrast_ok(run);
    md << "## Contrast\n\n" << contrast_summary(run).dump(2) << "\n";
  }
  write_file(out / "report.md", md.str());
  std::cout << md.str();
  return ok ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lamplighter graphs, connecting-path construction and Dirichlet experiments"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config_file, "JSON config file");
    sub->add_option("--out", o.out, "output directory");
  };
  auto graph_opts = [&](CLI::App* sub) {
    sub->add_option("--graph", o.graph, "base graph, e.g. line, grid:2, tree:3, cycle:8");
    sub->add_option("--lamps", o.lamps, "finite lamp graph H, e.g. complete:2");
    sub->add_option("--default-state", o.default_state, "default lamp state s0");
  };

  auto* ball_cmd = app.add_subcommand("ball", "enumerate a ball: edges, sphere sizes, degrees");
  common(ball_cmd);
  graph_opts(ball_cmd);
  ball_cmd->add_option("--center", o.center, "center vertex encoding (default: root)");
  ball_cmd->add_option("--radius", o.radius, "ball radius");
  ball_cmd->add_option("--cap", o.cap, "vertex cap");

  auto* solve_cmd = app.add_subcommand("solve", "harmonic extension of boundary values");
  common(solve_cmd);
  graph_opts(solve_cmd);
  solve_cmd->add_option("--bc", o.bc_file, "boundary JSON {\"fixed\": {...}}");
  solve_cmd->add_option("--center", o.center, "ball center for infinite graphs");
  solve_cmd->add_option("--radius", o.radius, "ball radius for infinite graphs");
  solve_cmd->add_option("--cap", o.cap, "vertex cap");
  solve_cmd->add_option("--tol", o.tol, "max harmonic residual");
  solve_cmd->add_option("--max-iter", o.max_iter, "iteration limit");

  auto* gadget_cmd = app.add_subcommand("gadget", "build connecting paths P_1..P_n");
  common(gadget_cmd);
  graph_opts(gadget_cmd);
  gadget_cmd->add_option("--s-ray", o.s_ray, "S ray, family:base[:start] or JSON");
  gadget_cmd->add_option("--q-ray", o.q_ray, "Q ray, family:base[:start] or JSON");
  gadget_cmd->add_option("-n,--steps", o.steps, "number of paths");
  gadget_cmd->add_option("--horizon", o.horizon, "splice search horizon");
  gadget_cmd->add_option("--z-mode", o.z_mode, "constructive or bfs");

  auto* verify_cmd = app.add_subcommand("verify", "re-check a serialized path sequence");
  common(verify_cmd);
  graph_opts(verify_cmd);
  verify_cmd->add_option("--paths", o.paths_file, "paths.json")->required();

  auto* contrast_cmd = app.add_subcommand("contrast", "tree vs lamplighter unit-gap energy");
  common(contrast_cmd);
  contrast_cmd->add_option("--lamps", o.lamps, "finite lamp graph H");
  contrast_cmd->add_option("--tree-degree", o.tree_degree);
  contrast_cmd->add_option("--min-radius", o.min_radius);
  contrast_cmd->add_option("--tree-max-radius", o.tree_max_radius);
  contrast_cmd->add_option("--lamp-max-radius", o.lamp_max_radius);
  contrast_cmd->add_option("--prefix", o.prefix, "ray prefix length");
  contrast_cmd->add_option("--cap", o.cap, "vertex cap");
  contrast_cmd->add_option("--tol", o.tol);

  auto* report_cmd = app.add_subcommand("report", "run the standard experiment set");
  common(report_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    Resolved r{Json::object(), o};
    if (!o.config_file.empty()) r.cfg = load_json(o.config_file);
    if (!r.cfg.is_object()) throw InvalidArgument("config must be a JSON object");
    if (ball_cmd->parsed()) return cmd_ball(r);
    if (solve_cmd->parsed()) return cmd_solve(r);
    if (gadget_cmd->parsed()) return cmd_gadget(r);
    if (verify_cmd->parsed()) return cmd_verify(r);
    if (contrast_cmd->parsed()) return cmd_contrast(r);
    if (report_cmd->parsed()) return cmd_report(r);
  } catch (const ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return kViolation;
  }
  return kUsage;
}
