#include <gtest/gtest.h>

#include <random>

#include "covertbf/conic/solver.hpp"
#include "support/sdp_battery.hpp"

using namespace covertbf;
using namespace covertbf::conic;

namespace {

CMatrix random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cdouble(g(rng), g(rng));
  return hermitian_part(a);
}

}  // namespace

TEST(Embedding, ParamsRoundTrip) {
  std::mt19937_64 rng(3);
  const CMatrix h = random_hermitian(4, rng);
  const RVector p = params_from_hermitian(h);
  ASSERT_EQ(p.size(), 16);
  EXPECT_LT((hermitian_from_params(p.data(), 4) - h).norm(), 1e-14);
}

TEST(Embedding, EigenvaluesAreDoubled) {
  CMatrix h(2, 2);
  h << 1.0, cdouble(0, 1), cdouble(0, -1), 1.0;
  Eigen::SelfAdjointEigenSolver<RMatrix> eig(embed_hermitian(h));
  const RVector ev = eig.eigenvalues();
  EXPECT_NEAR(ev[0], 0.0, 1e-12);
  EXPECT_NEAR(ev[1], 0.0, 1e-12);
  EXPECT_NEAR(ev[2], 2.0, 1e-12);
  EXPECT_NEAR(ev[3], 2.0, 1e-12);
  EXPECT_LT((unembed_hermitian(embed_hermitian(h)) - h).norm(), 1e-14);
}

TEST(Embedding, TraceCoefficientsMatchComplexTrace) {
  std::mt19937_64 rng(5);
  const CMatrix m = random_hermitian(3, rng);
  const CMatrix x = random_hermitian(3, rng);
  ConicProblem p;
  const BlockId b = p.add_psd_block("X", 3);
  p.set_objective(Sense::kMinimize, LinearForm{}.add(b, m));
  const StandardForm f = embed_complex(p);
  EXPECT_NEAR(f.c.dot(params_from_hermitian(x)), (m * x).trace().real(), 1e-12);
}

TEST(Solver, MinTraceWithUnitCorner) {
  ConicProblem p;
  const BlockId x = p.add_psd_block("X", 2);
  p.set_objective(Sense::kMinimize, LinearForm{}.add(x, CMatrix::Identity(2, 2)));
  CMatrix e11 = CMatrix::Zero(2, 2);
  e11(0, 0) = 1.0;
  p.add_affine(LinearForm{}.add(x, e11), Relation::kEqual, 1.0);
  const ConicSolution s = solve(p);
  ASSERT_TRUE(s.optimal()) << to_string(s.status);
  EXPECT_NEAR(s.objective_value, 1.0, 1e-7);
  EXPECT_LT(s.max_constraint_violation, 1e-7);
}

TEST(Solver, LmiBoundsFreeScalar) {
  // max t  s.t. [[1, t], [t, 1]] >= 0  ->  t = 1
  ConicProblem p;
  const ScalarId t = p.add_scalar("t", ScalarDomain::kFree);
  p.set_objective(Sense::kMaximize, LinearForm{}.add(t, 1.0));
  LmiConstraint l;
  l.dim = 2;
  l.constant = CMatrix::Identity(2, 2);
  CMatrix off = CMatrix::Zero(2, 2);
  off(0, 1) = off(1, 0) = 1.0;
  l.scalars.push_back({t, off});
  p.add_lmi(l);
  const ConicSolution s = solve(p);
  ASSERT_TRUE(s.optimal()) << to_string(s.status);
  EXPECT_NEAR(s.scalars.at("t"), 1.0, 1e-6);
  EXPECT_NEAR(s.objective_value, 1.0, 1e-6);
}

TEST(Solver, DetectsInfeasibility) {
  ConicProblem p;
  const BlockId x = p.add_psd_block("X", 3);
  const CMatrix id = CMatrix::Identity(3, 3);
  p.add_affine(LinearForm{}.add(x, id), Relation::kLessEqual, 1.0);
  p.add_affine(LinearForm{}.add(x, id), Relation::kGreaterEqual, 2.0);
  EXPECT_EQ(solve(p).status, SolveStatus::kInfeasible);
  EXPECT_EQ(check_feasibility(p), Feasibility::kInfeasible);
}

TEST(Solver, DetectsUnboundedness) {
  ConicProblem p;
  const BlockId x = p.add_psd_block("X", 2);
  p.set_objective(Sense::kMaximize, LinearForm{}.add(x, CMatrix::Identity(2, 2)));
  EXPECT_EQ(solve(p).status, SolveStatus::kUnbounded);
}

TEST(Solver, MinEigenvalueOfRandomHermitian) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 2 + trial;
    const CMatrix c = random_hermitian(n, rng);
    ConicProblem p;
    const BlockId x = p.add_psd_block("X", n);
    p.set_objective(Sense::kMinimize, LinearForm{}.add(x, c));
    p.add_affine(LinearForm{}.add(x, CMatrix::Identity(n, n)), Relation::kEqual, 1.0);
    const ConicSolution s = solve(p);
    ASSERT_TRUE(s.optimal()) << to_string(s.status);
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(c);
    EXPECT_NEAR(s.objective_value, eig.eigenvalues()(0), 1e-6);
    EXPECT_EQ(rank_profile(s.blocks.at("X")).rank, 1);
  }
}

TEST(Solver, CongruenceLmiMatchesBeamformingOracle) {
  // max h^H X h  s.t. Tr X <= P, written through an LMI  t <= h^H X h.
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  CVector h(4);
  for (auto& v : h) v = cdouble(g(rng), g(rng));
  const double power = 2.5;
  ConicProblem p;
  const BlockId x = p.add_psd_block("X", 4);
  const ScalarId t = p.add_scalar("t", ScalarDomain::kFree);
  p.set_objective(Sense::kMaximize, LinearForm{}.add(t, 1.0));
  p.add_affine(LinearForm{}.add(x, CMatrix::Identity(4, 4)), Relation::kLessEqual, power);
  LmiConstraint l;
  l.dim = 1;
  l.constant = CMatrix::Zero(1, 1);
  l.blocks.push_back({x, 1.0, CMatrix(h)});
  l.scalars.push_back({t, -CMatrix::Identity(1, 1)});
  p.add_lmi(l);
  const ConicSolution s = solve(p);
  ASSERT_TRUE(s.optimal()) << to_string(s.status);
  EXPECT_NEAR(s.objective_value, power * h.squaredNorm(), 1e-6 * power * h.squaredNorm());
}

TEST(Solver, RandomFeasibleSdpsHaveZeroGap) {
  // Primal built around a known interior point; the dual optimum must match.
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3;
    ConicProblem p;
    const BlockId x = p.add_psd_block("X", n);
    const CMatrix c = random_hermitian(n, rng) + 4.0 * CMatrix::Identity(n, n);
    p.set_objective(Sense::kMinimize, LinearForm{}.add(x, c));
    const CMatrix x0 = CMatrix::Identity(n, n);
    for (int k = 0; k < 3; ++k) {
      const CMatrix a = random_hermitian(n, rng);
      p.add_affine(LinearForm{}.add(x, a), Relation::kEqual, (a * x0).trace().real());
    }
    const ConicSolution s = solve(p);
    ASSERT_TRUE(s.optimal()) << to_string(s.status);
    EXPECT_LT(s.max_constraint_violation, 1e-6);
    EXPECT_LE(s.objective_value, (c * x0).trace().real() + 1e-6);
  }
}

TEST(Problem, RejectsBadInput) {
  ConicProblem p;
  EXPECT_THROW(p.add_psd_block("X", 0), InvalidInput);
  const BlockId x = p.add_psd_block("X", 2);
  EXPECT_THROW(p.add_psd_block("X", 2), InvalidInput);
  CMatrix bad(2, 2);
  bad << 1.0, 2.0, 0.0, 1.0;
  EXPECT_THROW(p.add_affine(LinearForm{}.add(x, bad), Relation::kEqual, 1.0), InvalidInput);
  EXPECT_THROW(p.add_affine(LinearForm{}.add(x, CMatrix::Identity(3, 3)), Relation::kEqual, 1.0), InvalidInput);
  EXPECT_THROW(p.block("nope"), InvalidInput);
}

TEST(Problem, DumpListsVariablesAndConstraints) {
  ConicProblem p;
  const BlockId x = p.add_psd_block("W0", 2);
  p.add_scalar("t", ScalarDomain::kFree);
  p.add_affine(LinearForm{}.add(x, CMatrix::Identity(2, 2)), Relation::kLessEqual, 1.0, "power");
  const std::string d = p.dump();
  EXPECT_NE(d.find("block W0 2"), std::string::npos);
  EXPECT_NE(d.find("scalar t free"), std::string::npos);
  EXPECT_NE(d.find("affine power <="), std::string::npos);
}

TEST(RankProfile, RatioTest) {
  CMatrix a = CMatrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 1e-9;
  EXPECT_EQ(rank_profile(a).rank, 1);
  EXPECT_EQ(rank_profile(CMatrix::Identity(2, 2)).rank, 2);
  EXPECT_NEAR(rank_profile(CMatrix::Identity(2, 2)).dominance, 0.5, 1e-12);
  EXPECT_EQ(rank_profile(CMatrix::Zero(3, 3)).rank, 0);
}

class TinySdpBattery : public ::testing::TestWithParam<int> {};

TEST_P(TinySdpBattery, MatchesHandOptimum) {
  auto battery = covertbf::testing::tiny_sdp_battery();
  const auto& c = battery.at(GetParam());
  const ConicSolution s = solve(c.problem);
  if (!c.optimum) {
    EXPECT_EQ(s.status, SolveStatus::kInfeasible) << c.name;
    return;
  }
  ASSERT_TRUE(s.optimal()) << c.name << ": " << to_string(s.status);
  EXPECT_NEAR(s.objective_value, *c.optimum, 1e-6) << c.name;
  EXPECT_LT(s.max_constraint_violation, 1e-7) << c.name;
}

INSTANTIATE_TEST_SUITE_P(Battery, TinySdpBattery,
                         ::testing::Range(0, static_cast<int>(covertbf::testing::tiny_sdp_battery().size())),
                         [](const ::testing::TestParamInfo<int>& info) {
                           return covertbf::testing::tiny_sdp_battery().at(info.param).name;
                         });
