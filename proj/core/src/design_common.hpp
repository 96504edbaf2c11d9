#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "covertbf/beamformer.hpp"
#include "covertbf/conic/solver.hpp"
#include "covertbf/scene.hpp"

namespace covertbf::detail {

/// The designs are solved on a copy with unit power budget and noise powers
/// divided by p_total; every constraint is homogeneous in (W, sigma^2), so
/// beamformers scale back by sqrt(p_total).
Scene normalized(const Scene& scene);
BeamformerPair scaled(const BeamformerPair& pair, double factor);

/// Lifted pair from one solve of a level problem.
struct LiftedPair {
  CMatrix w0;
  CMatrix w1;
  conic::ConicSolution solution;
};

/// Orthogonal projector onto the complement of span{vs}.
CMatrix complement_projector(const std::vector<CVector>& vs);

CMatrix outer(const CVector& v);
CVector unit_or_zero(const CVector& v);
void check_level(double v, const char* what);

/// |alpha|^2 ||h_T||^2
double echo_gain(const Scene& s);

/// Blocks W0 (cover) and W1 (comm) with the power budget.
conic::ConicProblem lifted_pair_problem(const Scene& s);
/// a Tr(T W0) - level a Tr(T W1) >= level sigma_R^2
void add_echo_level(conic::ConicProblem& p, const Scene& s, double level);
/// Tr(B W1) - level Tr(B W0) >= level sigma_B^2
void add_bob_level(conic::ConicProblem& p, const Scene& s, double level);

DesignDiagnostics with_ranks(DesignDiagnostics d, const LiftedPair& l);

/// Solves the level problem with a minimum-power objective; nullopt unless optimal.
std::optional<LiftedPair> solve_level(conic::ConicProblem problem, DesignDiagnostics& diag);

struct BisectionOutcome {
  double level = 0.0;
  LiftedPair lifted;
};

/// Bisection on [0, upper]: feasible at 0 is required (else DesignInfeasible
/// with `what`), stops when the bracket is below zeta * upper.
BisectionOutcome bisect(double upper, double zeta, const std::function<std::optional<LiftedPair>(double)>& level,
                        DesignDiagnostics& diag, const char* what);

/// Fills the metrics of a design evaluated on the physical scene.
DesignResult finish(const Scene& scene, const BeamformerPair& pair, DesignDiagnostics diag);

}  // namespace covertbf::detail
