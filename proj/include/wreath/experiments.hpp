#ifndef WREATH_EXPERIMENTS_HPP
#define WREATH_EXPERIMENTS_HPP

// Reproducible experiment drivers shared by the CLI and the acceptance
// suite. Every function here is deterministic: identical inputs give
// byte-identical CSV/SVG text.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "wreath/builtin.hpp"
#include "wreath/dirichlet.hpp"
#include "wreath/gadget.hpp"
#include "wreath/lamplighter.hpp"
#include "wreath/oracle.hpp"
#include "wreath/ray_families.hpp"
#include "wreath/rays.hpp"

namespace wreath {

// Shortest text that reads back as the same double.
inline std::string format_number(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

// RFC 4180 field quoting.
inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

inline std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k) out += ',';
    out += csv_field(fields[k]);
  }
  return out + "\r\n";
}

// ---------------------------------------------------------------- ball

struct BallReport {
  Ball ball;
  std::string edges_csv;    // u,v
  std::string spheres_csv;  // radius,count,cumulative
  std::string degrees_csv;  // degree,count
};

inline BallReport ball_report(const GraphOracle& oracle, const VertexId& center, long radius,
                              std::size_t cap = kDefaultBallCap) {
  BallReport r{ball(oracle, center, radius, cap), {}, {}, {}};
  const FiniteGraph& g = r.ball.graph;
  r.edges_csv = csv_line({"u", "v"});
  for (const auto& [i, j] : g.edges()) r.edges_csv += csv_line({g.vertex(i).str(), g.vertex(j).str()});
  r.spheres_csv = csv_line({"radius", "count", "cumulative"});
  std::size_t total = 0;
  for (std::size_t k = 0; k < r.ball.sphere_sizes.size(); ++k) {
    total += r.ball.sphere_sizes[k];
    r.spheres_csv += csv_line({std::to_string(k), std::to_string(r.ball.sphere_sizes[k]),
                               std::to_string(total)});
  }
  std::map<std::size_t, std::size_t> hist;
  for (std::size_t i = 0; i < g.size(); ++i) ++hist[g.degree(i)];
  r.degrees_csv = csv_line({"degree", "count"});
  for (const auto& [d, c] : hist) r.degrees_csv += csv_line({std::to_string(d), std::to_string(c)});
  return r;
}

// -------------------------------------------------------------- gadget

struct GadgetConfig {
  GraphSpec base{"line", 1, {}};
  GraphSpec lamps{"complete", 2, {}};
  std::optional<VertexId> default_state;
  std::optional<RaySpec> s_ray, q_ray;  // defaults: default_ray_pair(base)
  std::size_t steps = 50;
  std::size_t horizon = 16;
  ZMode z_mode = ZMode::Constructive;
};

struct GadgetRun {
  std::vector<GadgetPath> paths;
  std::vector<StepCheck> checks;
  DisjointReport disjoint;
  std::optional<std::string> witness_violation;
  GrowthReport growth;
  bool c_hat_settled = true;  // running c_hat non-increasing for i >= 10

  bool rows_ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const StepCheck& c) { return c.ok(); });
  }
  bool ok() const {
    return rows_ok() && disjoint.edge_disjoint && disjoint.interior_vertex_disjoint &&
           !witness_violation && c_hat_settled && std::isfinite(growth.c_hat);
  }
  PathSeq path_seq() const {
    PathSeq seq;
    for (const auto& p : paths) seq.push_back(p.encoded());
    return seq;
  }
};

inline LampGraph make_lamp_graph(const GraphSpec& base, const GraphSpec& lamps,
                                 const std::optional<VertexId>& s0) {
  if (!lamps.finite()) throw InvalidArgument("lamp graph H must be finite");
  return LampGraph(builtin_graph(base), finite_graph(lamps), s0);
}

/// Running c_hat(n) non-increasing for every n >= 10.
inline bool c_hat_settles(const GrowthReport& g) {
  for (std::size_t k = 10; k < g.rows.size(); ++k)
    if (g.rows[k].c_hat > g.rows[k - 1].c_hat) return false;
  return true;
}

inline GadgetRun run_gadget(const GadgetConfig& cfg) {
  if (cfg.steps < 1) throw InvalidArgument("gadget needs at least one step");
  const LampGraph lg = make_lamp_graph(cfg.base, cfg.lamps, cfg.default_state);
  RaySpec s_spec, q_spec;
  if (!cfg.s_ray || !cfg.q_ray) std::tie(s_spec, q_spec) = default_ray_pair(cfg.base);
  if (cfg.s_ray) s_spec = *cfg.s_ray;
  if (cfg.q_ray) q_spec = *cfg.q_ray;
  const Ray s = lamp_ray(lg, cfg.base, s_spec);
  const Ray q = lamp_ray(lg, cfg.base, q_spec);
  const SplicedRay spliced = splice_double_ray(s, q, lg.oracle(), cfg.horizon);

  GadgetRun run;
  Gadget gadget = init_gadget(lg, spliced, cfg.z_mode);
  for (std::size_t k = 0; k < cfg.steps; ++k) {
    run.paths.push_back(gadget.next_path());
    run.checks.push_back(check_step(lg, run.paths.back()));
  }
  const PathSeq seq = run.path_seq();
  run.disjoint = check_disjoint(seq);
  run.witness_violation = check_lamp_witness(run.paths);
  run.growth = verify_linear_growth(seq);
  run.c_hat_settled = c_hat_settles(run.growth);
  return run;
}

inline std::string gadget_csv(const GadgetRun& run) {
  std::string out = csv_line({"i", "x_len", "y_len", "z_len", "p_len", "tree_diameter",
                              "tree_edges", "z_bound", "ratio", "c_hat", "row_ok"});
  for (std::size_t k = 0; k < run.paths.size(); ++k) {
    const auto& p = run.paths[k];
    const auto& g = run.growth.rows[k];
    out += csv_line({std::to_string(p.i), std::to_string(p.x_len()), std::to_string(p.y_len()),
                     std::to_string(p.z_len()), std::to_string(p.length()),
                     std::to_string(p.tree_diameter), std::to_string(p.tree_edges),
                     std::to_string(p.z_bound()), format_number(g.ratio), format_number(g.c_hat),
                     run.checks[k].ok() ? "true" : "false"});
  }
  return out;
}

// ------------------------------------------------------------ contrast

struct ContrastConfig {
  long tree_degree = 3;
  GraphSpec lamps{"complete", 2, {}};
  long min_radius = 2;
  long tree_max_radius = 8;
  long lamp_max_radius = 6;
  std::size_t prefix = 2;
  SolverOptions solver;
  std::size_t cap = kDefaultBallCap;
};

struct ContrastRow {
  std::string graph;
  long radius = 0;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  double resistance = 0.0;
  double energy = 0.0;  // 1 / resistance
};

struct ContrastRun {
  std::vector<ContrastRow> rows;
  std::string tree_label, lamp_label;
  bool tree_non_increasing = true;
  double tree_last_relative_change = 0.0;
  bool lamp_strictly_increasing = true;
  std::optional<long> first_flat_radius;  // first r where lamp energy failed to increase
  std::optional<std::string> truncated;   // cap hit; rows up to that radius are kept

  bool tree_converged() const { return tree_last_relative_change < 0.05; }
};

namespace detail {

inline void contrast_series(const GraphOracle& oracle, const std::vector<VertexId>& a,
                            const std::vector<VertexId>& b, const std::string& label,
                            const ContrastConfig& cfg, long max_radius, ContrastRun& run) {
  for (long r = cfg.min_radius; r <= max_radius; ++r) {
    Ball bl;
    try {
      bl = ball(oracle, oracle.root(), r, cfg.cap);
    } catch (const ResourceLimit& e) {
      run.truncated = label + " at radius " + std::to_string(r) + ": " + e.what();
      return;
    }
    for (const auto* set : {&a, &b})
      for (const auto& v : *set)
        if (!bl.graph.contains(v))
          throw InvalidArgument("ray prefix vertex " + v.str() + " outside the radius-" +
                                std::to_string(r) + " ball");
    const double res = effective_resistance(bl.graph, a, b, cfg.solver);
    run.rows.push_back({label, r, bl.graph.size(), bl.graph.edge_count(), res, 1.0 / res});
  }
}

}  // namespace detail

/// Unit-gap energy between two fixed disjoint ray prefixes in growing balls
/// of tree(d) and of tree(d) wr H, both centered at the root.
// Relative slack for trend comparisons; well above solver round-off.
inline constexpr double kTrendSlack = 1e-9;

inline ContrastRun run_contrast(const ContrastConfig& cfg) {
  const GraphSpec tree{"tree", cfg.tree_degree, {}};
  ContrastRun run;
  run.tree_label = tree.label();
  run.lamp_label = tree.label() + " wr " + cfg.lamps.label();

  const GraphOracle t = builtin_graph(tree);
  const auto ta = base_graph_ray(tree, {"frozen", "0", 1}).take(cfg.prefix);
  const auto tb = base_graph_ray(tree, {"frozen", "1", 1}).take(cfg.prefix);
  detail::contrast_series(t, ta, tb, run.tree_label, cfg, cfg.tree_max_radius, run);

  const LampGraph lg = make_lamp_graph(tree, cfg.lamps, std::nullopt);
  const auto [s_spec, q_spec] = default_ray_pair(tree);
  const auto la = lamp_ray(lg, tree, s_spec).take(cfg.prefix);
  const auto lb = lamp_ray(lg, tree, q_spec).take(cfg.prefix);
  detail::contrast_series(lg.oracle(), la, lb, run.lamp_label, cfg, cfg.lamp_max_radius, run);

  const ContrastRow* prev_tree = nullptr;
  const ContrastRow* prev_lamp = nullptr;
  for (const auto& row : run.rows) {
    if (row.graph == run.tree_label) {
      if (prev_tree) {
        if (row.resistance > prev_tree->resistance * (1 + kTrendSlack)) run.tree_non_increasing = false;
        run.tree_last_relative_change =
            std::abs(row.resistance - prev_tree->resistance) / prev_tree->resistance;
      }
      prev_tree = &row;
    } else {
      if (prev_lamp && !(row.energy > prev_lamp->energy * (1 + kTrendSlack))) {
        run.lamp_strictly_increasing = false;
        if (!run.first_flat_radius) run.first_flat_radius = row.radius;
      }
      prev_lamp = &row;
    }
  }
  return run;
}

inline std::string contrast_csv(const ContrastRun& run) {
  std::string out = csv_line({"graph", "radius", "vertices", "edges", "resistance", "energy"});
  for (const auto& r : run.rows)
    out += csv_line({r.graph, std::to_string(r.radius), std::to_string(r.vertices),
                     std::to_string(r.edges), format_number(r.resistance),
                     format_number(r.energy)});
  return out;
}

/// Line chart of energy against radius, one polyline per graph in the CSV.
inline std::string contrast_svg(const ContrastRun& run) {
  constexpr double W = 640, H = 400, L = 70, R = 170, T = 30, B = 50;
  std::vector<std::string> series;
  for (const auto& r : run.rows)
    if (std::find(series.begin(), series.end(), r.graph) == series.end()) series.push_back(r.graph);
  double xmin = 0, xmax = 1, ymax = 1;
  if (!run.rows.empty()) {
    xmin = xmax = static_cast<double>(run.rows.front().radius);
    ymax = 0;
    for (const auto& r : run.rows) {
      xmin = std::min(xmin, static_cast<double>(r.radius));
      xmax = std::max(xmax, static_cast<double>(r.radius));
      ymax = std::max(ymax, r.energy);
    }
    if (xmax == xmin) xmax = xmin + 1;
    ymax = ymax > 0 ? ymax * 1.1 : 1;
  }
  auto fx = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  auto fy = [&](double y) { return H - B - y / ymax * (H - T - B); };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };
  auto esc = [](const std::string& s) {
    std::string o;
    for (char c : s) {
      if (c == '&') o += "&amp;";
      else if (c == '<') o += "&lt;";
      else if (c == '>') o += "&gt;";
      else if (c == '"') o += "&quot;";
      else o += c;
    }
    return o;
  };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
                  "font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
  s += "<line x1=\"" + num(L) + "\" y1=\"" + num(H - B) + "\" x2=\"" + num(W - R) + "\" y2=\"" +
       num(H - B) + "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + num(L) + "\" y1=\"" + num(T) + "\" x2=\"" + num(L) + "\" y2=\"" +
       num(H - B) + "\" stroke=\"black\"/>\n";
  for (long x = static_cast<long>(xmin); x <= static_cast<long>(xmax); ++x)
    s += "<text x=\"" + num(fx(static_cast<double>(x))) + "\" y=\"" + num(H - B + 16) +
         "\" text-anchor=\"middle\">" + std::to_string(x) + "</text>\n";
  for (int k = 0; k <= 4; ++k) {
    const double y = ymax * k / 4.0;
    s += "<text x=\"" + num(L - 6) + "\" y=\"" + num(fy(y) + 4) + "\" text-anchor=\"end\">" +
         num(y) + "</text>\n";
  }
  s += "<text x=\"" + num((L + W - R) / 2) + "\" y=\"" + num(H - 12) +
       "\" text-anchor=\"middle\">ball radius r</text>\n";
  s += "<text x=\"16\" y=\"" + num((T + H - B) / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
       num((T + H - B) / 2) + ")\">unit-gap energy</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    std::string pts;
    for (const auto& r : run.rows) {
      if (r.graph != series[k]) continue;
      if (!pts.empty()) pts += ' ';
      pts += num(fx(static_cast<double>(r.radius))) + "," + num(fy(r.energy));
    }
    const char* color = colors[k % 4];
    s += "<polyline data-series=\"" + esc(series[k]) + "\" fill=\"none\" stroke=\"" + color +
         "\" stroke-width=\"2\" points=\"" + pts + "\"/>\n";
    const double ly = T + 20.0 * static_cast<double>(k);
    s += "<line x1=\"" + num(W - R + 10) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(W - R + 30) +
         "\" y2=\"" + num(ly) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    s += "<text x=\"" + num(W - R + 36) + "\" y=\"" + num(ly + 4) + "\">" + esc(series[k]) +
         "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace wreath

#endif  // WREATH_EXPERIMENTS_HPP
