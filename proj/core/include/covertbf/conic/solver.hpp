#pragma once

#include <memory>

#include "covertbf/beamformer.hpp"
#include "covertbf/conic/problem.hpp"
#include "covertbf/conic/standard_form.hpp"

namespace covertbf::conic {

struct SolverTolerances {
  double gap = 1e-8;      // relative duality gap
  double abs_gap = 1e-9;  // absolute gap, used when the objective is ~0
  double feas = 1e-8;     // primal/dual residuals and certificates
  int max_iterations = 200;
};

struct StandardSolution {
  SolveStatus status = SolveStatus::kNumericalFailure;
  RVector x, y, z, s;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
  int iterations = 0;
};

/// Homogeneous self-dual primal-dual interior-point method with
/// Nesterov-Todd scaling and a Mehrotra predictor-corrector.
StandardSolution solve_standard(const StandardForm& form, const SolverTolerances& tol);

/// Pluggable backend; the built-in interior-point method is the default.
class ConicBackend {
 public:
  virtual ~ConicBackend() = default;
  virtual ConicSolution solve(const ConicProblem& problem, const SolverTolerances& tol) const = 0;
};

class InteriorPointBackend final : public ConicBackend {
 public:
  ConicSolution solve(const ConicProblem& problem, const SolverTolerances& tol) const override;
};

const ConicBackend& default_backend();

ConicSolution solve(const ConicProblem& problem, const SolverTolerances& tol = {});

enum class Feasibility { kFeasible, kInfeasible };

/// Solves the problem with its objective dropped. Throws SolverFailure when
/// the solver produces neither a feasible point nor an infeasibility
/// certificate.
Feasibility check_feasibility(const ConicProblem& problem, const SolverTolerances& tol = {});

/// Numeric rank from the eigenvalue ratio test; rank one iff
/// lambda_max / trace >= 1 - threshold.
RankProfile rank_profile(const CMatrix& w, double threshold = 1e-6);

}  // namespace covertbf::conic
