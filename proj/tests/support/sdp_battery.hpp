#pragma once

// Small conic programs whose optima follow by hand.

#include <optional>
#include <string>
#include <vector>

#include "covertbf/conic/solver.hpp"

namespace covertbf::testing {

struct TinySdp {
  std::string name;
  conic::ConicProblem problem;
  std::optional<double> optimum;  // nullopt: primal infeasible
};

inline CMatrix unit(int n, int i, int j) {
  CMatrix e = CMatrix::Zero(n, n);
  e(i, j) = 1.0;
  if (i != j) e(j, i) = 1.0;
  return e;
}

inline std::vector<TinySdp> tiny_sdp_battery() {
  using namespace conic;
  const cdouble I(0.0, 1.0);
  std::vector<TinySdp> out;

  {  // X11 = 1 forces Tr X >= 1.
    ConicProblem p;
    const BlockId x = p.add_psd_block("X", 2);
    p.set_objective(Sense::kMinimize, LinearForm{}.add(x, CMatrix::Identity(2, 2)));
    p.add_affine(LinearForm{}.add(x, unit(2, 0, 0)), Relation::kEqual, 1.0);
    out.push_back({"min_trace_unit_corner", std::move(p), 1.0});
  }
  {  // [[1, t], [t, 1]] >= 0 iff |t| <= 1.
    ConicProblem p;
    const ScalarId t = p.add_scalar("t", ScalarDomain::kFree);
    p.set_objective(Sense::kMaximize, LinearForm{}.add(t, 1.0));
    p.add_lmi({2, CMatrix::Identity(2, 2), {}, {{t, unit(2, 0, 1)}}, "box"});
    out.push_back({"max_offdiagonal_scalar", std::move(p), 1.0});
  }
  {  // [[t, 1], [1, t]] >= 0 iff t >= 1.
    ConicProblem p;
    const ScalarId t = p.add_scalar("t", ScalarDomain::kFree);
    p.set_objective(Sense::kMinimize, LinearForm{}.add(t, 1.0));
    p.add_lmi({2, unit(2, 0, 1), {}, {{t, CMatrix::Identity(2, 2)}}, "shift"});
    out.push_back({"min_diagonal_shift", std::move(p), 1.0});
  }
  {  // Schur complement: [[t, a^H], [a, I]] >= 0 iff t >= ||a||^2 = 6.
    ConicProblem p;
    const ScalarId t = p.add_scalar("t", ScalarDomain::kFree);
    p.set_objective(Sense::kMinimize, LinearForm{}.add(t, 1.0));
    CVector a(3);
    a << 1.0, 2.0 * I, -1.0;
    CMatrix c = CMatrix::Zero(4, 4);
    c.block(1, 1, 3, 3).setIdentity();
    c.block(1, 0, 3, 1) = a;
    c.block(0, 1, 1, 3) = a.adjoint();
    p.add_lmi({4, c, {}, {{t, unit(4, 0, 0)}}, "schur"});
    out.push_back({"schur_complement_norm", std::move(p), 6.0});
  }
  {  // Unit diagonal bounds |X12| <= 1; Tr(C X) = Re X12.
    ConicProblem p;
    const BlockId x = p.add_psd_block("X", 2);
    p.set_objective(Sense::kMaximize, LinearForm{}.add(x, 0.5 * unit(2, 0, 1)));
    p.add_affine(LinearForm{}.add(x, unit(2, 0, 0)), Relation::kEqual, 1.0);
    p.add_affine(LinearForm{}.add(x, unit(2, 1, 1)), Relation::kEqual, 1.0);
    out.push_back({"max_real_correlation", std::move(p), 1.0});
  }
  {  // Same with a purely imaginary coefficient: Tr(C X) = -Im X12.
    ConicProblem p;
    const BlockId x = p.add_psd_block("X", 2);
    CMatrix c = CMatrix::Zero(2, 2);
    c(0, 1) = -0.5 * I;
    c(1, 0) = 0.5 * I;
    p.set_objective(Sense::kMaximize, LinearForm{}.add(x, c));
    p.add_affine(LinearForm{}.add(x, unit(2, 0, 0)), Relation::kEqual, 1.0);
    p.add_affine(LinearForm{}.add(x, unit(2, 1, 1)), Relation::kEqual, 1.0);
    out.push_back({"max_imaginary_correlation", std::move(p), 1.0});
  }
  {  // LP corner x = y = 2/3.
    ConicProblem p;
    const ScalarId x = p.add_scalar("x", ScalarDomain::kNonnegative);
    const ScalarId y = p.add_scalar("y", ScalarDomain::kNonnegative);
    p.set_objective(Sense::kMinimize, LinearForm{}.add(x, 1.0).add(y, 1.0));
    p.add_affine(LinearForm{}.add(x, 1.0).add(y, 2.0), Relation::kGreaterEqual, 2.0);
    p.add_affine(LinearForm{}.add(x, 2.0).add(y, 1.0), Relation::kGreaterEqual, 2.0);
    out.push_back({"lp_corner", std::move(p), 4.0 / 3.0});
  }
  {  // min Tr X with Tr(A X) = 1: all mass on the largest eigenvalue of A.
    ConicProblem p;
    const BlockId x = p.add_psd_block("X", 3);
    p.set_objective(Sense::kMinimize, LinearForm{}.add(x, CMatrix::Identity(3, 3)));
    CMatrix a = CMatrix::Zero(3, 3);
    a.diagonal() << 1.0, 2.0, 4.0;
    p.add_affine(LinearForm{}.add(x, a), Relation::kEqual, 1.0);
    out.push_back({"min_trace_weighted_unit", std::move(p), 0.25});
  }
  {  // X <= B: max Tr X = Tr B.
    ConicProblem p;
    const BlockId x = p.add_psd_block("X", 2);
    p.set_objective(Sense::kMaximize, LinearForm{}.add(x, CMatrix::Identity(2, 2)));
    CMatrix b(2, 2);
    b << 2.0, 1.0 + I, 1.0 - I, 2.0;
    p.add_lmi({2, b, {{x, -1.0, CMatrix::Identity(2, 2)}}, {}, "upper"});
    out.push_back({"max_trace_below_b", std::move(p), 4.0});
  }
  {  // X >= A with X >= 0: Tr X = sum of positive eigenvalues of A.
    ConicProblem p;
    const BlockId x = p.add_psd_block("X", 2);
    p.set_objective(Sense::kMinimize, LinearForm{}.add(x, CMatrix::Identity(2, 2)));
    CMatrix a = CMatrix::Zero(2, 2);
    a(0, 0) = 3.0;
    a(1, 1) = -1.0;
    p.add_lmi({2, -a, {{x, 1.0, CMatrix::Identity(2, 2)}}, {}, "lower"});
    out.push_back({"min_trace_above_indefinite", std::move(p), 3.0});
  }
  {  // t - 2 s = 1 with s >= 0.
    ConicProblem p;
    const ScalarId t = p.add_scalar("t", ScalarDomain::kFree);
    const ScalarId s = p.add_scalar("s", ScalarDomain::kNonnegative);
    p.set_objective(Sense::kMinimize, LinearForm{}.add(t, 1.0));
    p.add_affine(LinearForm{}.add(t, 1.0).add(s, -2.0), Relation::kEqual, 1.0);
    out.push_back({"free_scalar_equality", std::move(p), 1.0});
  }
  {  // Two blocks sharing a covering constraint.
    ConicProblem p;
    const BlockId x = p.add_psd_block("X", 2);
    const BlockId y = p.add_psd_block("Y", 2);
    p.set_objective(Sense::kMinimize, LinearForm{}.add(x, CMatrix::Identity(2, 2)).add(y, CMatrix::Identity(2, 2)));
    p.add_affine(LinearForm{}.add(x, unit(2, 0, 0)).add(y, unit(2, 0, 0)), Relation::kGreaterEqual, 2.0);
    p.add_affine(LinearForm{}.add(x, unit(2, 0, 0)), Relation::kLessEqual, 0.5);
    out.push_back({"two_block_cover", std::move(p), 2.0});
  }
  {  // Rank-one congruence: max |h^H w|^2 under Tr W <= 2 is 2 ||h||^2 = 2 * 5.
    ConicProblem p;
    const BlockId w = p.add_psd_block("W", 2);
    CVector h(2);
    h << 1.0, 2.0 * I;
    p.set_objective(Sense::kMaximize, LinearForm{}.add(w, h * h.adjoint()));
    p.add_affine(LinearForm{}.add(w, CMatrix::Identity(2, 2)), Relation::kLessEqual, 2.0);
    out.push_back({"matched_beam_gain", std::move(p), 10.0});
  }
  {  // PSD matrix with negative trace.
    ConicProblem p;
    const BlockId x = p.add_psd_block("X", 2);
    p.set_objective(Sense::kMinimize, LinearForm{}.add(x, CMatrix::Identity(2, 2)));
    p.add_affine(LinearForm{}.add(x, CMatrix::Identity(2, 2)), Relation::kEqual, -1.0);
    out.push_back({"infeasible_negative_trace", std::move(p), std::nullopt});
  }
  {  // -1 + s >= 0 with s <= 0.5.
    ConicProblem p;
    const ScalarId s = p.add_scalar("s", ScalarDomain::kNonnegative);
    p.set_objective(Sense::kMinimize, LinearForm{}.add(s, 1.0));
    p.add_lmi({1, -CMatrix::Identity(1, 1), {}, {{s, CMatrix::Identity(1, 1)}}, "floor"});
    p.add_affine(LinearForm{}.add(s, 1.0), Relation::kLessEqual, 0.5);
    out.push_back({"infeasible_lmi_floor", std::move(p), std::nullopt});
  }
  return out;
}

}  // namespace covertbf::testing
