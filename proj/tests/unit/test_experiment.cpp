#include <gtest/gtest.h>

#include <sstream>

#include "covertbf/csv.hpp"
#include "covertbf/experiment.hpp"
#include "covertbf/plot.hpp"

using namespace covertbf;

namespace {

std::string error_of(std::string_view json) {
  try {
    parse_experiment_config(json);
  } catch (const InvalidInput& e) {
    return e.what();
  }
  return "";
}

ExperimentConfig small_sweep() {
  return parse_experiment_config(R"({
    "kind": "sweep", "design": "sdr", "sweep_axis": "p_total_dbm",
    "grid": [0, 10], "n_scenes": 2, "zeta": 1e-4, "seed": 7
  })");
}

}  // namespace

TEST(Config, ParsesFullSweep) {
  const ExperimentConfig c = parse_experiment_config(R"({
    "kind": "sweep", "design": "robust", "objective": "rate", "direction": "kl10",
    "csi_error": {"c_shape": [[2, 0], [0, [1, 0]]], "upsilon": 0.01},
    "n_antennas": 2, "sweep_axis": "epsilon", "grid": [0.05, 0.1], "gamma": 0.5
  })");
  EXPECT_EQ(c.design, DesignKind::kRobust);
  EXPECT_EQ(c.objective, DesignObjective::kRate);
  EXPECT_EQ(c.direction, KlDirection::kP1P0);
  ASSERT_TRUE(c.scene.csi_error);
  EXPECT_DOUBLE_EQ(c.scene.csi_error->shape()(0, 0).real(), 2.0);
  EXPECT_DOUBLE_EQ(c.scene.csi_error->upsilon(), 0.01);
  EXPECT_EQ(*c.sweep_axis, SweepAxis::kEpsilon);
  EXPECT_DOUBLE_EQ(c.gamma, 0.5);
}

TEST(Config, ErrorsNameTheField) {
  EXPECT_NE(error_of(R"({"kind": "sweep", "bogus": 1})").find("bogus"), std::string::npos);
  EXPECT_NE(error_of(R"({"kind": "teleport"})").find("kind"), std::string::npos);
  EXPECT_NE(error_of(R"({"kind": "sweep", "sweep_axis": "beta", "grid": [2, 1]})").find("grid"), std::string::npos);
  EXPECT_NE(error_of(R"({"kind": "sweep", "sweep_axis": "beta", "grid": [1], "n_scenes": "many"})").find("n_scenes"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"kind": "cdf_kl", "design": "robust"})").find("csi_error"), std::string::npos);
  EXPECT_NE(
      error_of(R"({"kind": "sweep", "sweep_axis": "beta", "grid": [1], "csi_error": {"upsilon": -1}})").find("upsilon"),
      std::string::npos);
  EXPECT_NE(error_of("{not json").find("JSON"), std::string::npos);
}

TEST(Csv, RoundTripsExactly) {
  ResultRow a;
  a.scene_id = 3;
  a.axis_value = 0.1;
  a.mi_bits = 1.0 / 3.0;
  a.kl01 = 1e-300;
  a.worst_kl = 0.0049999999999999;
  a.feasible = true;
  ResultRow b;
  b.scene_id = 4;
  std::stringstream ss;
  write_rows(ss, {a, b});
  EXPECT_EQ(ss.str().substr(0, ss.str().find('\n')), kResultHeader);
  const auto back = read_rows(ss);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].mi_bits, a.mi_bits);
  EXPECT_EQ(back[0].kl01, a.kl01);
  EXPECT_EQ(back[0].worst_kl, a.worst_kl);
  EXPECT_TRUE(back[0].feasible);
  EXPECT_FALSE(back[1].feasible);
}

TEST(Csv, RejectsBadHeaderAndFields) {
  std::stringstream bad_header("scene,axis\n");
  EXPECT_THROW(read_rows(bad_header), InvalidInput);
  std::stringstream bad_field(std::string(kResultHeader) + "\n1,2,x,0,0,0,0,0,0,0,1,0\n");
  try {
    read_rows(bad_field);
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  EXPECT_EQ(summary_path("out/run.csv"), "out/run_summary.csv");
}

TEST(DetectionSim, EqualPowersGiveUnitTotalError) {
  Rng rng(1);
  const auto [fa, md] = empirical_detection_sim({2.0, 2.0}, 200000, rng);
  EXPECT_NEAR(fa + md, 1.0, 4 * std::sqrt(2 * 0.25 / 200000));
  EXPECT_NEAR(fa, std::exp(-1.0), 4 * std::sqrt(0.25 / 200000));
}

TEST(Sweep, SameSeedSameBytes) {
  const ExperimentConfig c = small_sweep();
  std::stringstream a, b;
  write_rows(a, run_sweep(c).rows);
  write_rows(b, run_sweep(c, {2, false}).rows);
  EXPECT_EQ(a.str(), b.str());
  ExperimentConfig other = c;
  other.seed = 8;
  std::stringstream d;
  write_rows(d, run_sweep(other).rows);
  EXPECT_NE(a.str(), d.str());
}

TEST(Sweep, ScenesAreSharedAcrossGridPoints) {
  const ExperimentConfig c = small_sweep();
  const Scene s0 = experiment_scene(apply_axis(c, SweepAxis::kPTotalDbm, 0.0).scene, c.seed, 1);
  const Scene s1 = experiment_scene(apply_axis(c, SweepAxis::kPTotalDbm, 10.0).scene, c.seed, 1);
  EXPECT_EQ(s0.h_bob, s1.h_bob);
  EXPECT_NEAR(s1.p_total / s0.p_total, 10.0, 1e-12);
}

TEST(Sweep, SummaryAndTrend) {
  std::vector<ResultRow> rows;
  for (int k = 0; k < 4; ++k) {
    for (double x : {1.0, 2.0}) {
      ResultRow r;
      r.axis_value = x;
      r.mi_bits = x + 0.1 * k;
      r.feasible = true;
      rows.push_back(r);
    }
  }
  ResultRow failed;
  failed.axis_value = 1.0;
  rows.push_back(failed);  // infeasible, excluded from the statistics
  const auto points = summarize_sweep(rows);
  ASSERT_EQ(points.size(), 2u);
  EXPECT_EQ(points[0].n_feasible, 4);
  EXPECT_NEAR(points[0].mean_mi, 1.15, 1e-12);
  EXPECT_NEAR(points[0].std_mi, std::sqrt(0.05 / 3.0), 1e-12);
  EXPECT_TRUE(trend_holds(points, Trend::kNondecreasing, false));
  EXPECT_FALSE(trend_holds(points, Trend::kNonincreasing, false));
}

TEST(Plot, EmptyOrInfeasibleInputIsAnError) {
  PlotSpec spec;
  spec.kind = PlotKind::kCdf;
  EXPECT_THROW(render_svg({}, spec), InvalidInput);
  EXPECT_THROW(render_svg({ResultRow{}}, spec), InvalidInput);
}

TEST(Plot, DeterministicSvg) {
  std::vector<ResultRow> rows(3);
  for (int k = 0; k < 3; ++k) {
    rows[k].feasible = true;
    rows[k].kl01 = 0.001 * (k + 1);
  }
  PlotSpec spec;
  spec.kind = PlotKind::kCdf;
  spec.threshold = 0.005;
  const std::string svg = render_svg(rows, spec);
  EXPECT_EQ(svg, render_svg(rows, spec));
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("threshold"), std::string::npos);
}
