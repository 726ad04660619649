#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "support.hpp"
#include "wreath/experiments.hpp"
#include "wreath/io.hpp"

using namespace wreath;
namespace fs = std::filesystem;

namespace {
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}
int run_cli(const std::string& args) {
  const int rc = std::system((std::string(WREATH_CLI) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}
fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("wreath_test_" + name);
  fs::remove_all(p);
  return p;
}
}  // namespace

TEST(BallReport, LineWreathK2MatchesBruteForce) {
  LampGraph lg = make_lamp_graph(parse_graph_shorthand("line"), parse_graph_shorthand("complete:2"), std::nullopt);
  for (long r = 0; r <= 6; ++r) {
    BallReport rep = ball_report(lg.oracle(), lg.root().encode(), r);
    auto ref = testing_support::brute_line_k2_ball(r);
    EXPECT_EQ(rep.ball.graph.size(), ref.vertices) << r;
    EXPECT_EQ(rep.ball.graph.edge_count(), ref.edges) << r;
    EXPECT_EQ(rep.ball.sphere_sizes, ref.spheres) << r;
  }
}

TEST(BallReport, K2WreathK2AndRadiusZero) {
  LampGraph lg = make_lamp_graph(parse_graph_shorthand("complete:2"), parse_graph_shorthand("complete:2"), std::nullopt);
  BallReport rep = ball_report(lg.oracle(), lg.root().encode(), 8);
  EXPECT_EQ(rep.ball.graph.size(), 8u);
  EXPECT_EQ(rep.ball.graph.edge_count(), 8u);
  BallReport zero = ball_report(lg.oracle(), lg.root().encode(), 0);
  EXPECT_EQ(zero.ball.graph.size(), 1u);
  EXPECT_EQ(zero.ball.graph.edge_count(), 0u);
  EXPECT_EQ(zero.degrees_csv, "degree,count\r\n0,1\r\n");
}

TEST(Csv, QuotingAndNumbers) {
  EXPECT_EQ(csv_line({"a", "b,c", "say \"hi\""}), "a,\"b,c\",\"say \"\"hi\"\"\"\r\n");
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(11.0), "11");
}

TEST(GadgetRun, SingleStepAndDeterminism) {
  GadgetConfig cfg;
  cfg.steps = 1;
  GadgetRun one = run_gadget(cfg);
  std::istringstream lines(gadget_csv(one));
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  EXPECT_EQ(count, 2);  // header + one row
  cfg.steps = 15;
  EXPECT_EQ(gadget_csv(run_gadget(cfg)), gadget_csv(run_gadget(cfg)));
}

TEST(Contrast, SmallRunAndSvgSeriesMatchCsv) {
  ContrastConfig cfg;
  cfg.tree_max_radius = 5;
  cfg.lamp_max_radius = 4;
  ContrastRun run = run_contrast(cfg);
  ASSERT_FALSE(run.rows.empty());
  for (const auto& r : run.rows) {
    EXPECT_GT(r.resistance, 0.0);
    EXPECT_TRUE(std::isfinite(r.resistance));
  }
  EXPECT_TRUE(run.tree_non_increasing);
  std::set<std::string> csv_series, svg_series;
  for (const auto& r : run.rows) csv_series.insert(r.graph);
  const std::string svg = contrast_svg(run);
  std::regex attr("data-series=\"([^\"]+)\"");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), attr); it != std::sregex_iterator(); ++it)
    svg_series.insert((*it)[1]);
  EXPECT_EQ(csv_series, svg_series);
  EXPECT_EQ(contrast_csv(run), contrast_csv(run_contrast(cfg)));
}

TEST(Io, RoundTrips) {
  for (const char* s : {"line", "grid:3", "tree:4", "cycle:6", "complete:3", "path:4"}) {
    GraphSpec g = parse_graph_shorthand(s);
    EXPECT_EQ(graph_spec_to_json(graph_spec_from_json(graph_spec_to_json(g))), graph_spec_to_json(g));
  }
  PathSeq seq{{VertexId("0 |"), VertexId("+1 |")}, {VertexId("0 | 0:1")}};
  EXPECT_EQ(path_seq_from_json(path_seq_to_json(seq)), seq);
  RaySpec r{"lighting", "+", 2};
  RaySpec back = ray_spec_from_json(ray_spec_to_json(r));
  EXPECT_EQ(back.family, r.family);
  EXPECT_EQ(back.base, r.base);
  EXPECT_EQ(back.start, r.start);
  EXPECT_THROW(graph_spec_from_json(Json{{"kind", "nope"}}), InvalidArgument);
}

TEST(Cli, ExitCodesAndFiles) {
  fs::path out = scratch("ball");
  EXPECT_EQ(run_cli("ball --graph line --lamps complete:2 --radius 4 --out " + out.string()), 0);
  EXPECT_TRUE(fs::exists(out / "edges.csv"));
  EXPECT_TRUE(fs::exists(out / "spheres.csv"));
  EXPECT_EQ(run_cli("ball --graph nonsense --radius 1 --out " + out.string()), 2);
  EXPECT_EQ(run_cli("frobnicate"), 2);
  EXPECT_EQ(run_cli("ball --graph tree:3 --radius 30 --cap 1000 --out " + out.string()), 3);
}

TEST(Cli, GadgetThenVerifyAndConfigOverride) {
  fs::path out = scratch("gadget");
  fs::create_directories(out);
  {
    std::ofstream cfg(out / "cfg.json");
    cfg << R"({"graph": "tree:3", "lamps": "complete:2", "steps": 30})";
  }
  EXPECT_EQ(run_cli("gadget --config " + (out / "cfg.json").string() + " -n 5 --out " + out.string()), 0);
  const std::string csv = slurp(out / "gadget.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);  // flag wins over config
  EXPECT_EQ(run_cli("verify --graph tree:3 --lamps complete:2 --paths " + (out / "paths.json").string()), 0);

  // A tampered sequence with a repeated path fails verification.
  Json paths = Json::parse(slurp(out / "paths.json"));
  paths.push_back(paths[0]);
  {
    std::ofstream bad(out / "bad.json");
    bad << paths.dump();
  }
  EXPECT_EQ(run_cli("verify --paths " + (out / "bad.json").string()), 1);
  EXPECT_EQ(run_cli("gadget --config " + (out / "missing.json").string()), 2);
}

TEST(Cli, SolveWritesSolution) {
  fs::path out = scratch("solve");
  fs::create_directories(out);
  {
    std::ofstream bc(out / "bc.json");
    bc << R"({"fixed": {"0": 0, "10": 1}})";
  }
  EXPECT_EQ(run_cli("solve --graph path:11 --bc " + (out / "bc.json").string() + " --out " + out.string()), 0);
  Json s = Json::parse(slurp(out / "summary.json"));
  EXPECT_NEAR(s["energy"].get<double>(), 0.1, 1e-9);
}
