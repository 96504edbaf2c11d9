#include "design_common.hpp"

#include <cmath>

#include "covertbf/covert_metrics.hpp"

namespace covertbf::detail {

using conic::BlockId;
using conic::LinearForm;
using conic::Relation;

Scene normalized(const Scene& scene) {
  scene.validate();
  Scene s = scene;
  s.p_total = 1.0;
  s.sigma2_radar /= scene.p_total;
  s.sigma2_bob /= scene.p_total;
  s.sigma2_warden /= scene.p_total;
  return s;
}

BeamformerPair scaled(const BeamformerPair& pair, double factor) { return {pair.cover * factor, pair.comm * factor}; }

CMatrix complement_projector(const std::vector<CVector>& vs) {
  const Eigen::Index n = vs.front().size();
  CMatrix a(n, static_cast<Eigen::Index>(vs.size()));
  for (std::size_t i = 0; i < vs.size(); ++i) a.col(static_cast<Eigen::Index>(i)) = vs[i];
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullU);
  const RVector sv = svd.singularValues();
  const double cut = 1e-12 * std::max(1.0, sv.size() ? sv[0] : 0.0);
  CMatrix p = CMatrix::Identity(n, n);
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv[k] > cut) p -= svd.matrixU().col(k) * svd.matrixU().col(k).adjoint();
  }
  return p;
}

CMatrix outer(const CVector& v) { return v * v.adjoint(); }

CVector unit_or_zero(const CVector& v) {
  const double n = v.norm();
  return n > 1e-12 ? CVector(v / n) : CVector(CVector::Zero(v.size()));
}

void check_level(double v, const char* what) {
  if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidInput(std::string(what) + " must be finite and >= 0");
}

double echo_gain(const Scene& s) { return std::norm(s.alpha) * s.h_target.squaredNorm(); }

conic::ConicProblem lifted_pair_problem(const Scene& s) {
  s.validate();
  conic::ConicProblem p;
  p.add_psd_block("W0", s.n_antennas);
  p.add_psd_block("W1", s.n_antennas);
  const CMatrix id = CMatrix::Identity(s.n_antennas, s.n_antennas);
  p.add_affine(LinearForm{}.add(BlockId{0}, id).add(BlockId{1}, id), Relation::kLessEqual, s.p_total, "power");
  return p;
}

void add_echo_level(conic::ConicProblem& p, const Scene& s, double level) {
  const CMatrix t = echo_gain(s) * outer(s.h_target);
  p.add_affine(LinearForm{}.add(BlockId{0}, t).add(BlockId{1}, -level * t), Relation::kGreaterEqual,
               level * s.sigma2_radar, "echo_sinr");
}

void add_bob_level(conic::ConicProblem& p, const Scene& s, double level) {
  const CMatrix b = outer(s.h_bob);
  p.add_affine(LinearForm{}.add(BlockId{1}, b).add(BlockId{0}, -level * b), Relation::kGreaterEqual,
               level * s.sigma2_bob, "bob_sinr");
}

DesignDiagnostics with_ranks(DesignDiagnostics d, const LiftedPair& l) {
  d.cover_rank = conic::rank_profile(l.w0);
  d.comm_rank = conic::rank_profile(l.w1);
  return d;
}

std::optional<LiftedPair> solve_level(conic::ConicProblem problem, DesignDiagnostics& diag) {
  const int n0 = problem.blocks()[0].dim;
  const int n1 = problem.blocks()[1].dim;
  conic::LinearForm power;
  power.add(BlockId{0}, CMatrix::Identity(n0, n0));
  power.add(BlockId{1}, CMatrix::Identity(n1, n1));
  problem.set_objective(conic::Sense::kMinimize, power);
  ++diag.feasibility_solves;
  conic::ConicSolution sol = conic::solve(problem);
  diag.solver_iterations += sol.iterations;
  if (!sol.optimal()) return std::nullopt;
  LiftedPair out;
  out.w0 = sol.blocks.at(problem.blocks()[0].name);
  out.w1 = sol.blocks.at(problem.blocks()[1].name);
  out.solution = std::move(sol);
  return out;
}

BisectionOutcome bisect(double upper, double zeta, const std::function<std::optional<LiftedPair>(double)>& level,
                        DesignDiagnostics& diag, const char* what) {
  if (!(zeta > 0.0)) throw InvalidInput("bisection accuracy must be positive");
  diag.level_upper_bound = upper;
  auto base = level(0.0);
  if (!base) throw DesignInfeasible(what);
  BisectionOutcome out{0.0, std::move(*base)};
  double lo = 0.0;
  double hi = upper;
  while (hi - lo > zeta * upper) {
    const double mid = 0.5 * (lo + hi);
    ++diag.bisection_iterations;
    if (auto r = level(mid)) {
      lo = mid;
      out.level = mid;
      out.lifted = std::move(*r);
    } else {
      hi = mid;
    }
  }
  diag.level = out.level;
  return out;
}

DesignResult finish(const Scene& scene, const BeamformerPair& pair, DesignDiagnostics diag) {
  DesignResult r;
  r.pair = pair;
  r.mi_bits = mi_radar(scene, pair);
  r.rate_bits = rate_bob(scene, pair);
  r.kl = kl_report(scene, pair, scene.h_warden);
  r.diagnostics = diag;
  return r;
}

}  // namespace covertbf::detail
