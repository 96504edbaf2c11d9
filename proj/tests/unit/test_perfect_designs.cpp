#include <gtest/gtest.h>

#include "covertbf/conic/solver.hpp"
#include "covertbf/experiment.hpp"
#include "covertbf/perfect_designs.hpp"

using namespace covertbf;

namespace {

Scene scene(int i) { return experiment_scene(SceneConfig{}, 42, i); }

double warden_leak(const Scene& s, const BeamformerPair& p) { return std::norm(s.h_warden.dot(p.comm)); }

void expect_valid_mi_design(const Scene& s, const DesignResult& r, double beta) {
  EXPECT_LE(warden_leak(s, r.pair), 1e-8 * s.p_total);
  EXPECT_GE(sinr_bob(s, r.pair), beta * (1 - 1e-4));
  EXPECT_LE(r.pair.power(), s.p_total * (1 + 1e-9));
  EXPECT_LE(r.kl.kl01, 1e-10);
  EXPECT_GE(detection_error_probs(lambda_pair(s.h_warden, r.pair.cover, r.pair.comm, s.sigma2_warden)).xi, 1 - 1e-5);
  EXPECT_NEAR(r.mi_bits, mi_radar(s, r.pair), 1e-12);
}

}  // namespace

TEST(ZeroForcing, CommSdpMatchesProjector) {
  for (int i = 0; i < 5; ++i) {
    const Scene s = scene(i);
    const CVector cf = zf_w1_closed_form(s, 1.0);
    const CVector sdp = zf_w1_sdp(s, 1.0);
    EXPECT_NEAR(sdp.squaredNorm() / cf.squaredNorm(), 1.0, 1e-5);
    EXPECT_LT(std::abs(s.h_target.dot(cf)), 1e-12);
    EXPECT_LT(std::abs(s.h_warden.dot(cf)), 1e-12);
    EXPECT_NEAR(sinr_bob(s, {CVector::Zero(5), cf}), 1.0, 1e-12);
  }
}

TEST(ZeroForcing, CoverSocpMatchesProjector) {
  for (int i = 0; i < 5; ++i) {
    const Scene s = scene(i);
    const CoverBeam cf = zf_w0_closed_form(s, 3.0);
    const CoverBeam socp = zf_w0(s, 3.0);
    ASSERT_FALSE(cf.degenerate);
    const double a = s.h_target.dot(cf.w0).real(), b = s.h_target.dot(socp.w0).real();
    EXPECT_NEAR(b / a, 1.0, 1e-6);
    EXPECT_LT(std::abs(s.h_bob.dot(socp.w0)), 1e-6);
  }
}

TEST(ZeroForcing, DegenerateWhenTargetAlignsWithBob) {
  Scene s = scene(0);
  s.h_bob = 2.0 * s.h_target;
  EXPECT_TRUE(zf_w0_closed_form(s, 1.0).degenerate);
  EXPECT_TRUE(zf_w0(s, 1.0).degenerate);
  EXPECT_THROW(zf_w1_closed_form(s, 1.0), DesignInfeasible);
}

TEST(ZeroForcing, BudgetOverrunIsInfeasible) { EXPECT_THROW(maximize_mi_zf(scene(0), 1e6), DesignInfeasible); }

TEST(Sdr, ValidAndNoWorseThanZf) {
  for (int i = 0; i < 3; ++i) {
    const Scene s = scene(i);
    const DesignResult sdr = maximize_mi_sdr(s, 1.0);
    expect_valid_mi_design(s, sdr, 1.0);
    const DesignResult zf = maximize_mi_zf(s, 1.0);
    expect_valid_mi_design(s, zf, 1.0);
    EXPECT_GE(sdr.mi_bits, zf.mi_bits - 1e-6);
    EXPECT_LE(sdr.mi_bits, detection_only_mi_bound(s) + 1e-9);
  }
}

TEST(Sdr, NoCommDemandReachesDetectionOnlyBound) {
  const Scene s = scene(1);
  const DesignResult r = maximize_mi_sdr(s, 0.0);
  EXPECT_NEAR(r.mi_bits, detection_only_mi_bound(s), 1e-6);
}

TEST(Sdr, DroppingCovertnessCannotHurt) {
  const Scene s = scene(2);
  DesignOptions loose;
  loose.enforce_covertness = false;
  EXPECT_GE(maximize_mi_sdr(s, 1.0, loose).mi_bits, maximize_mi_sdr(s, 1.0).mi_bits - 1e-6);
}

TEST(Sdr, ImpossibleSinrIsInfeasible) { EXPECT_THROW(maximize_mi_sdr(scene(0), 1e6), DesignInfeasible); }

TEST(Sdr, FeasibilityProblemBracketsOptimum) {
  // Normalization leaves SINR levels unchanged, so the scene can be posed directly.
  const Scene s = scene(3);
  const DesignResult r = maximize_mi_sdr(s, 1.0);
  const double achieved = radar_sinr(s, r.pair);
  const double level = r.diagnostics.level;
  EXPECT_LE(achieved, level * (1 + 1e-6));
  EXPECT_EQ(conic::check_feasibility(mi_feasibility_problem(s, achieved * (1 - 1e-4), 1.0)),
            conic::Feasibility::kFeasible);
  EXPECT_EQ(conic::check_feasibility(mi_feasibility_problem(s, level * 1.01, 1.0)), conic::Feasibility::kInfeasible);
}

TEST(Rate, MeetsMiFloorAndNullsWarden) {
  for (int i = 0; i < 2; ++i) {
    const Scene s = scene(i);
    const DesignResult r = maximize_rate_perfect(s, 1.0);
    EXPECT_GE(r.mi_bits, 1.0 - 1e-4);
    EXPECT_LE(warden_leak(s, r.pair), 1e-8 * s.p_total);
    EXPECT_LE(r.pair.power(), s.p_total * (1 + 1e-9));
    EXPECT_GT(r.rate_bits, 0.0);
    // Rate at an MI floor met by the MI design's pair is at least that pair's rate.
    const DesignResult mi = maximize_mi_sdr(s, 1.0);
    const DesignResult at_mi = maximize_rate_perfect(s, mi.mi_bits * (1 - 1e-3));
    EXPECT_GE(at_mi.rate_bits, mi.rate_bits - 1e-4);
  }
}

TEST(Rate, FloorAboveBoundIsInfeasible) {
  const Scene s = scene(0);
  EXPECT_THROW(maximize_rate_perfect(s, detection_only_mi_bound(s) + 0.1), DesignInfeasible);
  const DesignResult r = maximize_rate_perfect(s, detection_only_mi_bound(s));
  EXPECT_NEAR(r.rate_bits, 0.0, 1e-12);
}
