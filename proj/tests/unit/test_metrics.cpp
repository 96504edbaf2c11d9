#include <gtest/gtest.h>

#include <random>

#include "covertbf/covert_metrics.hpp"

using namespace covertbf;

namespace {

// D(p || q) for exponential densities by composite Simpson on [0, 80 max(lambda)].
double kl_quadrature(double lp, double lq) {
  const int n = 200000;
  const double hi = 80.0 * std::max(lp, lq);
  const double h = hi / n;
  auto f = [&](double x) {
    const double p = received_power_density(lp, x);
    if (p == 0.0) return 0.0;
    return p * std::log(p / received_power_density(lq, x));
  };
  double s = f(0.0) + f(hi);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return s * h / 3.0;
}

Scene toy_scene() {
  Scene s;
  s.n_antennas = 2;
  s.h_target = CVector::Ones(2);
  s.h_bob = CVector(2);
  s.h_bob << 1.0, cdouble(0.0, 1.0);
  s.h_warden = CVector(2);
  s.h_warden << 2.0, 0.0;
  s.h_warden_est = s.h_warden;
  s.alpha = cdouble(0.0, 2.0);
  s.sigma2_radar = 0.5;
  s.sigma2_bob = 2.0;
  s.sigma2_warden = 1.0;
  s.p_total = 4.0;
  return s;
}

}  // namespace

TEST(Detection, ReferencePairOneTwo) {
  const DetectionReport d = detection_error_probs({1.0, 2.0});
  EXPECT_NEAR(d.phi_star, 2.0 * std::log(2.0), 1e-14);
  EXPECT_NEAR(d.p_fa, 0.25, 1e-14);
  EXPECT_NEAR(d.p_md, 0.5, 1e-14);
  EXPECT_NEAR(d.xi, 0.75, 1e-14);
}

TEST(Detection, EqualPowersAreIndistinguishable) {
  const DetectionReport d = detection_error_probs({3.0, 3.0});
  EXPECT_DOUBLE_EQ(d.xi, 1.0);
  EXPECT_NEAR(d.phi_star, 3.0, 1e-12);
  EXPECT_NEAR(optimal_threshold({3.0, 3.0 * (1 + 1e-9)}), 3.0, 1e-6);
}

TEST(Detection, ThresholdMinimizesTotalError) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.1, 5.0);
  for (int t = 0; t < 50; ++t) {
    const double l0 = u(rng);
    const LambdaPair lp{l0, l0 * (1.0 + u(rng))};
    const DetectionReport d = detection_error_probs(lp);
    EXPECT_NEAR(total_error_at_threshold(lp, d.phi_star), d.xi, 1e-12);
    for (double f : {0.5, 0.9, 0.99, 1.01, 1.1, 2.0}) {
      EXPECT_GE(total_error_at_threshold(lp, f * d.phi_star), d.xi - 1e-14);
    }
  }
}

TEST(Detection, PinskerAndTotalVariation) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int t = 0; t < 10000; ++t) {
    const double a = std::exp(u(rng)), b = std::exp(u(rng));
    const LambdaPair lp{std::min(a, b), std::max(a, b)};
    const DetectionReport d = detection_error_probs(lp);
    const double kl = std::min(kl_p0_p1(lp), kl_p1_p0(lp));
    EXPECT_LE(1.0 - d.xi, std::sqrt(kl / 2.0) + 1e-12);
    const double tv = std::exp(-d.phi_star / lp.lambda1) - std::exp(-d.phi_star / lp.lambda0);
    EXPECT_NEAR(d.xi, 1.0 - tv, 1e-12);
  }
}

TEST(Kl, MatchesQuadrature) {
  for (auto [l0, l1] : {std::pair{1.0, 2.0}, {0.3, 0.31}, {2.0, 7.5}}) {
    EXPECT_NEAR(kl_p0_p1({l0, l1}), kl_quadrature(l0, l1), 1e-8);
    EXPECT_NEAR(kl_p1_p0({l0, l1}), kl_quadrature(l1, l0), 1e-8);
  }
}

TEST(Kl, ShapeIsAccurateNearOne) {
  // f(1 + d) = d^2/2 - 2 d^3 / 3 + O(d^4)
  const double d = 1e-6;
  EXPECT_NEAR(kl_shape(1.0 + d), d * d / 2 - 2 * d * d * d / 3, 1e-22);
  EXPECT_EQ(kl_shape(1.0), 0.0);
  EXPECT_THROW(kl_shape(0.0), InvalidInput);
}

TEST(Kl, RejectsInvalidPairs) {
  EXPECT_THROW(kl_p0_p1({2.0, 1.0}), InvalidInput);
  EXPECT_THROW(kl_p0_p1({0.0, 1.0}), InvalidInput);
}

TEST(CovertInterval, RootsHitBudget) {
  for (double eps : {0.01, 0.05, 0.1, 0.2, 1.0}) {
    const CovertInterval ci = covert_interval(eps);
    EXPECT_NEAR(kl_shape(ci.a_bar), 2 * eps * eps, 1e-10) << eps;
    EXPECT_NEAR(kl_shape(ci.b_bar), 2 * eps * eps, 1e-10) << eps;
    EXPECT_LT(ci.a_bar, 1.0);
    EXPECT_GT(ci.b_bar, 1.0);
    EXPECT_LT(1.0 / ci.a_bar, ci.b_bar);
  }
  EXPECT_THROW(covert_interval(0.0), InvalidInput);
}

TEST(LambdaPair, FromBeamformers) {
  const CVector h = CVector::Ones(2);
  CVector w0(2), w1(2);
  w0 << 1.0, 0.0;
  w1 << 0.0, cdouble(0.0, 2.0);
  const LambdaPair lp = lambda_pair(h, w0, w1, 0.5);
  EXPECT_NEAR(lp.lambda0, 1.5, 1e-15);
  EXPECT_NEAR(lp.lambda1, 5.5, 1e-15);
  EXPECT_THROW(lambda_pair(h, w0, w1, 0.0), InvalidInput);
}

TEST(Links, HandComputedToyScene) {
  const Scene s = toy_scene();
  CVector w0(2), w1(2);
  w0 << 1.0, 1.0;                // h_T^H w0 = 2
  w1 << 1.0, cdouble(0.0, 1.0);  // h_T^H w1 = 1 + i, h_B^H w1 = 2, h_B^H w0 = 1 - i
  const BeamformerPair p{w0, w1};
  // |alpha|^2 ||h_T||^2 = 4 * 2 = 8
  EXPECT_NEAR(radar_sinr(s, p), 8.0 * 4.0 / (8.0 * 2.0 + 0.5), 1e-13);
  EXPECT_NEAR(mi_radar(s, p), 0.5 * std::log2(1.0 + 32.0 / 16.5), 1e-13);
  EXPECT_NEAR(sinr_bob(s, p), 4.0 / (2.0 + 2.0), 1e-13);
  EXPECT_NEAR(rate_bob(s, p), 1.0, 1e-13);
  EXPECT_NEAR(radar_sinr_bound(s), 4.0 * 4.0 * 2.0 * 2.0 / 0.5, 1e-12);
  const KlReport k = kl_report(s, p, s.h_warden);
  EXPECT_NEAR(k.kl01, kl_p0_p1({5.0, 9.0}), 1e-14);
}

TEST(Links, DetectionOnlyBoundIsAttained) {
  Scene s = toy_scene();
  const BeamformerPair p{std::sqrt(s.p_total) * s.h_target / s.h_target.norm(), CVector::Zero(2)};
  EXPECT_NEAR(mi_radar(s, p), detection_only_mi_bound(s), 1e-13);
}

TEST(Links, RateConversions) {
  EXPECT_DOUBLE_EQ(sinr_from_rate(1.0), 1.0);
  EXPECT_NEAR(radar_sinr_from_mi(0.5 * std::log2(1.0 + 7.0)), 7.0, 1e-13);
}
