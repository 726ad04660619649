// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>

#include "support.hpp"
#include "wreath/experiments.hpp"

using namespace wreath;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int n, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (secs > limit_s) {
    o.pass = false;
    o.detail += " (over time limit)";
  }
  if (!o.pass) ++failures;
  std::printf("%s %d %s [%.2fs / %.0fs] %s\n", o.pass ? "PASS" : "FAIL", n, name.c_str(), secs, limit_s,
              o.detail.c_str());
  std::fflush(stdout);
}

std::string gadget_csv_for(const char* base, std::size_t steps, GadgetRun* keep = nullptr) {
  GadgetConfig cfg;
  cfg.base = parse_graph_shorthand(base);
  cfg.steps = steps;
  GadgetRun run = run_gadget(cfg);
  std::string csv = gadget_csv(run);
  if (keep) *keep = std::move(run);
  return csv;
}

Outcome gadget_suite(const char* base, std::size_t steps) {
  GadgetRun run;
  gadget_csv_for(base, steps, &run);
  std::string why;
  if (run.paths.size() != steps) why += " only " + std::to_string(run.paths.size()) + " paths;";
  for (std::size_t k = 0; k < run.checks.size(); ++k)
    for (const auto& p : run.checks[k].problems) why += " i=" + std::to_string(k + 1) + ": " + p + ";";
  if (!run.disjoint.edge_disjoint || !run.disjoint.interior_vertex_disjoint)
    why += " not disjoint: " + run.disjoint.first_violation.value_or("?") + ";";
  if (!std::isfinite(run.growth.c_hat)) why += " c_hat not finite;";
  if (!run.c_hat_settled) why += " c_hat increases after i=10;";
  return {why.empty(), why.empty() ? "c_hat=" + format_number(run.growth.c_hat) : why};
}

}  // namespace

int main() {
  criterion(1, "K2 wr K2 is a single 8-cycle", 1, [] {
    LampGraph lg(builtin_graph(parse_graph_shorthand("complete:2")), finite_graph(parse_graph_shorthand("complete:2")));
    // Brute force: all (c0, c1, pos), moves flip pos, switches flip c_pos.
    std::set<std::pair<std::string, std::string>> expected;
    auto enc = [](int c0, int c1, int p) {
      Configuration c(VertexId("0"));
      c.set(VertexId("0"), VertexId(std::to_string(c0)));
      c.set(VertexId("1"), VertexId(std::to_string(c1)));
      return LampVertex{c, VertexId(std::to_string(p))}.encode().str();
    };
    for (int m = 0; m < 8; ++m) {
      const int c0 = m & 1, c1 = m >> 1 & 1, p = m >> 2;
      const std::string u = enc(c0, c1, p);
      expected.insert(std::minmax(u, enc(c0, c1, 1 - p)));
      expected.insert(std::minmax(u, p == 0 ? enc(1 - c0, c1, p) : enc(c0, 1 - c1, p)));
    }
    Ball b = ball(lg.oracle(), lg.root().encode(), 8);
    std::set<std::pair<std::string, std::string>> got;
    for (auto [i, j] : b.graph.edges()) got.insert(std::minmax(b.graph.vertex(i).str(), b.graph.vertex(j).str()));
    bool cycle = b.graph.size() == 8 && is_connected(b.graph);
    for (std::size_t i = 0; i < b.graph.size(); ++i) cycle = cycle && b.graph.degree(i) == 2;
    return Outcome{cycle && got == expected,
                   std::to_string(b.graph.size()) + " vertices, " + std::to_string(b.graph.edge_count()) + " edges"};
  });

  criterion(2, "degree formula on random lamp vertices", 5, [] {
    std::mt19937_64 rng(2024);
    std::size_t checked = 0, bad = 0;
    for (auto [g, h] : {std::pair{"line", "complete:2"}, std::pair{"tree:3", "path:3"}, std::pair{"grid:2", "cycle:5"}}) {
      LampGraph lg(builtin_graph(parse_graph_shorthand(g)), finite_graph(parse_graph_shorthand(h)));
      for (int k = 0; k < 80; ++k) {
        LampVertex v = lg.root();
        for (int s = 0; s < 50; ++s) {
          auto nb = lg.neighbors(v);
          v = nb[std::uniform_int_distribution<std::size_t>(0, nb.size() - 1)(rng)];
        }
        const std::size_t want = lg.base().neighbors(v.pos).size() + lg.lamps().degree(lg.lamps().at(v.config.state(v.pos)));
        bad += lg.neighbors(v).size() != want;
        ++checked;
      }
    }
    return Outcome{bad == 0, std::to_string(checked) + " vertices, " + std::to_string(bad) + " mismatches"};
  });

  criterion(3, "gadget bounds on line wr K2, i = 1..50", 60, [] { return gadget_suite("line", 50); });
  criterion(4, "gadget bounds on tree(3) wr K2, i = 1..20", 120, [] { return gadget_suite("tree:3", 20); });

  criterion(5, "Z minimality on a 4-vertex toy region", 5, [] {
    LampGraph lg(builtin_graph(parse_graph_shorthand("line")), finite_graph(parse_graph_shorthand("complete:2")));
    FiniteGraph::Builder tb;
    const char* pos[] = {"0", "+1", "+2", "+3"};
    for (int k = 0; k < 3; ++k) tb.add_edge(VertexId(pos[k]), VertexId(pos[k + 1]));
    FiniteGraph tree = std::move(tb).build();
    std::vector<LampVertex> states;
    for (int mask = 0; mask < 16; ++mask)
      for (const char* p : pos) {
        Configuration c(VertexId("0"));
        for (int k = 0; k < 4; ++k)
          if (mask >> k & 1) c.set(VertexId(pos[k]), VertexId("1"));
        states.push_back({c, VertexId(p)});
      }
    const std::size_t e = tree.edge_count();
    const std::size_t bound = 3 * e * static_cast<std::size_t>(lg.lamp_diameter());
    // The three-edge bound needs at most |E(T)| differing lamps; pairs where
    // every lamp of T differs are counted separately with their optimum.
    std::size_t pairs = 0, bad = 0, worst = 0, saturated = 0, saturated_opt = 0;
    for (const auto& a : states)
      for (const auto& b : states) {
        const std::size_t con = edge_length(build_z(lg, tree, a, b, ZMode::Constructive));
        const std::size_t opt = edge_length(build_z(lg, tree, a, b, ZMode::Bfs));
        std::size_t k = 0;
        for (const auto& g : tree.vertices()) k += !(a.config.state(g) == b.config.state(g));
        ++pairs;
        bad += opt > con;
        if (k > e) {
          ++saturated;
          saturated_opt = std::max(saturated_opt, opt);
          continue;
        }
        bad += con > bound;
        worst = std::max(worst, con);
      }
    LampVertex one_a = lg.at(VertexId("0"));
    LampVertex one_b{one_a.config.with(VertexId("+2"), VertexId("1")), VertexId("+3")};
    const std::size_t one_con = edge_length(build_z(lg, tree, one_a, one_b, ZMode::Constructive));
    const std::size_t one_opt = edge_length(build_z(lg, tree, one_a, one_b, ZMode::Bfs));
    bad += !(one_opt <= one_con && one_con <= bound);
    return Outcome{bad == 0, std::to_string(pairs) + " pairs, one-lamp instance bfs " + std::to_string(one_opt) +
                                 " <= constructive " + std::to_string(one_con) + " <= " + std::to_string(bound) +
                                 "; max constructive " + std::to_string(worst) + "; " + std::to_string(saturated) +
                                 " all-lamps-differ pairs excluded from the bound (optimum " +
                                 std::to_string(saturated_opt) + ")"};
  });

  criterion(6, "Dirichlet solver", 30, [] {
    FiniteGraph p = finite_graph(parse_graph_shorthand("path:11"));
    HarmonicSolution s = solve_dirichlet(p, {{{VertexId("0"), 0.0}, {VertexId("10"), 1.0}}});
    double err = std::abs(s.energy - 0.1);
    for (int k = 0; k <= 10; ++k) err = std::max(err, std::abs(s.values[p.at(VertexId(std::to_string(k)))] - k / 10.0));
    bool ok = err <= 1e-9;
    std::mt19937_64 rng(66);
    std::normal_distribution<double> noise(0.0, 0.05);
    for (int t = 0; t < 5; ++t) {
      FiniteGraph g = testing_support::random_connected(rng, 200 - 30 * static_cast<std::size_t>(t), 150);
      BoundaryCondition bc;
      std::uniform_real_distribution<double> val(-1.0, 1.0);
      for (std::size_t i = 0; i < g.size(); i += 9) bc.fixed[g.vertex(i)] = val(rng);
      HarmonicSolution h = solve_dirichlet(g, bc);
      double lo = 1e300, hi = -1e300;
      for (const auto& [v, x] : bc.fixed) lo = std::min(lo, x), hi = std::max(hi, x);
      for (double x : h.values) ok = ok && x >= lo - 1e-9 && x <= hi + 1e-9;
      for (int k = 0; k < 50; ++k) {
        std::vector<double> w = h.values;
        for (std::size_t i = 0; i < g.size(); ++i)
          if (!bc.fixed.contains(g.vertex(i))) w[i] += noise(rng);
        ok = ok && energy(g, w) >= h.energy - 1e-12;
      }
    }
    return Outcome{ok, "path max error " + format_number(err)};
  });

  criterion(7, "threshold split, Cauchy-Schwarz, divergence", 30, [] {
    std::mt19937_64 rng(77);
    bool ok = true;
    for (int t = 0; t < 100; ++t) {
      const long i = std::uniform_int_distribution<long>(1, 40)(rng);
      const double c = std::uniform_real_distribution<double>(1.0, 10.0)(rng);
      const long len = std::uniform_int_distribution<long>(1, static_cast<long>(c * static_cast<double>(i)))(rng);
      std::vector<double> v{0.0};
      std::exponential_distribution<double> step(1.0);
      for (long k = 0; k < len; ++k) v.push_back(v.back() + (k % 4 == 0 ? step(rng) : 0.02 * step(rng)));
      const double u = v.back();
      ThresholdSplit s = threshold_split(v, u, c, i);
      ok = ok && s.low_sum < 0.9 * u && s.high_energy > 0.09 * u * u / (c * static_cast<double>(i));
    }
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int t = 0; t < 1000; ++t) {
      const std::size_t len = std::uniform_int_distribution<std::size_t>(1, 80)(rng);
      std::vector<double> v{0.0};
      for (std::size_t k = 0; k < len; ++k) v.push_back(v.back() + gauss(rng));
      ok = ok && path_energy(v) >= v.back() * v.back() / static_cast<double>(len) - 1e-12;
    }
    auto cert = divergence_certificate(1'000'000, 1.0, 1.0);
    const double ratio = cert.partial_sums.back() / cert.partial_sums[999];
    ok = ok && std::abs(ratio - 2.0) / 2.0 < 0.05 && std::abs(divergence_certificate(1, 1, 1).partial_sums[0] - 0.09) < 1e-15;
    return Outcome{ok, "partial-sum ratio " + format_number(ratio)};
  });

  std::string contrast_first;
  criterion(8, "contrast: tree resistance settles, lamplighter energy rises", 600, [&] {
    ContrastRun run = run_contrast(ContrastConfig{});
    contrast_first = contrast_csv(run);
    std::string lamp;
    std::vector<double> e;
    for (const auto& r : run.rows)
      if (r.graph == run.lamp_label) {
        lamp += " r" + std::to_string(r.radius) + "=" + format_number(r.energy);
        e.push_back(r.energy);
      }
    bool later = e.size() >= 5;
    for (std::size_t k = 2; k < e.size(); ++k) later = later && e[k] > e[k - 1];
    const bool a = run.tree_non_increasing && run.tree_converged();
    const bool b = run.lamp_strictly_increasing && !run.truncated;
    std::string d = std::string("(a) ") + (a ? "ok" : "no") + " last step " + format_number(run.tree_last_relative_change) +
                    "; (b) " + (b ? "ok" : "no") + ";" + lamp;
    if (run.first_flat_radius) d += "; first non-increase at r=" + std::to_string(*run.first_flat_radius);
    d += std::string("; r=3..6 strictly increasing: ") + (later ? "yes" : "no");
    if (run.truncated) d += "; truncated: " + *run.truncated;
    return Outcome{a && b, d};
  });

  criterion(9, "determinism of gadget and contrast CSV", 600, [&] {
    const bool g = gadget_csv_for("line", 50) == gadget_csv_for("line", 50);
    const bool c = contrast_csv(run_contrast(ContrastConfig{})) == contrast_first && !contrast_first.empty();
    return Outcome{g && c, std::string("gadget ") + (g ? "identical" : "differs") + ", contrast " + (c ? "identical" : "differs")};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
