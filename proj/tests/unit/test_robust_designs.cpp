#include <gtest/gtest.h>

#include <random>

#include "covertbf/experiment.hpp"
#include "covertbf/robust_designs.hpp"

using namespace covertbf;

namespace {

struct Case {
  Scene scene;
  RobustCovertSpec spec;
};

Case make_case(int i, double upsilon = 0.005, KlDirection dir = KlDirection::kP0P1) {
  SceneConfig cfg;
  cfg.csi_error = EllipsoidError::identity(5, upsilon);
  Case c{experiment_scene(cfg, 42, i), {}};
  c.spec.epsilon = 0.05;
  c.spec.direction = dir;
  c.spec.error = cfg.csi_error;
  c.spec.h_w_est = c.scene.h_warden_est;
  return c;
}

double kl_at(const Case& c, const BeamformerPair& p, const CVector& delta) {
  const LambdaPair lp = lambda_pair(c.spec.h_w_est + delta, p.cover, p.comm, c.scene.sigma2_warden);
  return directional_kl(c.spec.direction, lp);
}

CMatrix random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cdouble(g(rng), g(rng));
  return (a + a.adjoint()) / 2.0;
}

}  // namespace

TEST(TrustRegion, ScalarCase) {
  // a = 2, b = 1 on |v|^2 <= 4: v = 2 gives 2 * 4 + 2 * 2.
  CMatrix a(1, 1);
  a(0, 0) = 2.0;
  CVector b(1);
  b(0) = 1.0;
  const auto s = trust_region_max(a, b, 4.0);
  EXPECT_NEAR(s.value, 12.0, 1e-10);
  EXPECT_NEAR(std::abs(s.v(0) - cdouble(2.0, 0.0)), 0.0, 1e-8);
}

TEST(TrustRegion, InteriorMaximizerOfConcaveQuadratic) {
  // A = -I, b = (0.5, 0): unconstrained maximizer v = b lies inside, value ||b||^2.
  const CMatrix a = -CMatrix::Identity(2, 2);
  CVector b(2);
  b << 0.5, 0.0;
  const auto s = trust_region_max(a, b, 1.0);
  EXPECT_NEAR(s.value, 0.25, 1e-10);
  EXPECT_LT((s.v - b).norm(), 1e-8);
}

TEST(TrustRegion, HardCaseWithZeroLinearTerm) {
  CMatrix a = CMatrix::Zero(3, 3);
  a.diagonal() << -1.0, 3.0, 3.0;
  const auto s = trust_region_max(a, CVector::Zero(3), 2.0);
  EXPECT_NEAR(s.value, 6.0, 1e-10);
  EXPECT_NEAR(s.v.squaredNorm(), 2.0, 1e-10);
}

TEST(TrustRegion, DominatesRandomFeasiblePoints) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  for (int t = 0; t < 20; ++t) {
    const CMatrix a = random_hermitian(4, rng);
    CVector b(4);
    for (int k = 0; k < 4; ++k) b(k) = cdouble(g(rng), g(rng));
    const double r2 = 0.1 + std::abs(g(rng));
    const auto s = trust_region_max(a, b, r2);
    auto value = [&](const CVector& v) { return v.dot(a * v).real() + 2.0 * b.dot(v).real(); };
    EXPECT_LE(s.v.squaredNorm(), r2 * (1 + 1e-9));
    EXPECT_NEAR(value(s.v), s.value, 1e-9 * (1 + std::abs(s.value)));
    for (int k = 0; k < 2000; ++k) {
      CVector v(4);
      for (int j = 0; j < 4; ++j) v(j) = cdouble(g(rng), g(rng));
      v *= std::sqrt(r2) / v.norm();
      EXPECT_LE(value(v), s.value + 1e-9 * (1 + std::abs(s.value)));
    }
  }
}

TEST(RobustSpec, RatioBoundsMatchInterval) {
  RobustCovertSpec spec;
  spec.epsilon = 0.05;
  spec.h_w_est = CVector::Ones(2);
  const CovertInterval ci = covert_interval(0.05);
  EXPECT_NEAR(spec.ratio_bounds().second, ci.b_bar, 1e-12);
  spec.direction = KlDirection::kP1P0;
  EXPECT_NEAR(directional_kl(spec.direction, {1.0, spec.ratio_bounds().second}), spec.budget(), 1e-10);
  spec.epsilon = 0.0;
  EXPECT_THROW(spec.validate(), InvalidInput);
}

TEST(RobustDesign, SProcedureSoundOverSampledErrors) {
  for (KlDirection dir : {KlDirection::kP0P1, KlDirection::kP1P0}) {
    const Case c = make_case(0, 0.005, dir);
    const RobustDesignResult r = maximize_mi_robust(c.scene, c.spec, 1.0);
    EXPECT_GE(r.certificate.eta1, -1e-10);
    EXPECT_GE(r.certificate.eta2, -1e-10);
    EXPECT_LE(r.worst_case_kl, c.spec.budget() + 1e-8);
    Rng rng(17);
    for (int k = 0; k < 10000; ++k) {
      const auto mode = k % 2 ? EllipsoidSampling::kBoundary : EllipsoidSampling::kInterior;
      EXPECT_LE(kl_at(c, r.design.pair, sample_ellipsoid_error(*c.spec.error, rng, mode)), c.spec.budget() + 1e-8);
    }
    EXPECT_GE(sinr_bob(c.scene, r.design.pair), 1.0 - 1e-4);
    EXPECT_LE(r.design.pair.power(), c.scene.p_total * (1 + 1e-9));
  }
}

TEST(RobustDesign, NoBetterThanNominal) {
  const Case c = make_case(1);
  const double robust = maximize_mi_robust(c.scene, c.spec, 1.0).design.mi_bits;
  const double nominal_mi = maximize_mi_robust(c.scene, nominal(c.spec), 1.0).design.mi_bits;
  EXPECT_LE(robust, nominal_mi + 1e-6);
}

TEST(RobustDesign, RateDesignMeetsFloorAndBudget) {
  const Case c = make_case(2);
  const RobustDesignResult r = maximize_rate_robust(c.scene, c.spec, 1.0);
  EXPECT_GE(r.design.mi_bits, 1.0 - 1e-4);
  EXPECT_LE(r.worst_case_kl, c.spec.budget() + 1e-8);
  EXPECT_GT(r.design.rate_bits, 0.0);
}

TEST(RobustDesign, HugeUncertaintyIsInfeasible) {
  const Case c = make_case(0, 100.0);
  EXPECT_THROW(maximize_mi_robust(c.scene, c.spec, 1.0), DesignInfeasible);
}

TEST(WorstCase, SamplingNeverExceedsExactSupremum) {
  const Case c = make_case(3);
  const RobustDesignResult nominal_design = maximize_mi_robust(c.scene, nominal(c.spec), 1.0);
  const BeamformerPair& p = nominal_design.design.pair;
  const auto [ratio, delta] = worst_case_ratio(p, c.spec, c.scene.sigma2_warden);
  EXPECT_LE(c.spec.error->quadratic(delta), c.spec.error->upsilon() * (1 + 1e-9));
  const double exact = directional_kl(c.spec.direction, {1.0, ratio});
  EXPECT_NEAR(kl_at(c, p, delta), exact, 1e-9);
  double prev = 0.0;
  for (int n : {250, 500, 1000, 2000}) {
    const WorstCaseKl w = worst_case_kl(p, c.spec, c.scene.sigma2_warden, n);
    EXPECT_GE(w.kl, prev);
    EXPECT_LE(w.kl, exact + 1e-9);
    EXPECT_NEAR(kl_at(c, p, w.delta), w.kl, 1e-12);
    prev = w.kl;
  }
  EXPECT_GT(prev, 0.99 * exact);
}

TEST(WorstCase, Deterministic) {
  const Case c = make_case(4);
  const BeamformerPair p = maximize_mi_robust(c.scene, nominal(c.spec), 1.0).design.pair;
  EXPECT_EQ(worst_case_kl(p, c.spec, c.scene.sigma2_warden, 300).kl,
            worst_case_kl(p, c.spec, c.scene.sigma2_warden, 300).kl);
}
