#include "covertbf/perfect_designs.hpp"

#include <cmath>

#include "covertbf/conic/solver.hpp"
#include "covertbf/covert_metrics.hpp"
#include "covertbf/randomization.hpp"
#include "design_common.hpp"

namespace covertbf {

using conic::BlockId;
using conic::ConicProblem;
using conic::LinearForm;
using conic::Relation;
using detail::add_bob_level;
using detail::add_echo_level;
using detail::check_level;
using detail::echo_gain;
using detail::lifted_pair_problem;
using detail::outer;
using detail::unit_or_zero;
using detail::with_ranks;

namespace {

// Keeps the directions of a candidate, nulls the comm beam toward the warden,
// and picks the powers: comm power just meets the SINR floor, cover power takes
// what is left (the echo SINR grows with it).
std::optional<BeamformerPair> repair_mi(const Scene& s, double beta, const CMatrix& null_proj,
                                        const BeamformerPair& cand) {
  const CVector u0 = unit_or_zero(cand.cover);
  const CVector u1 = unit_or_zero(null_proj * cand.comm);
  const double b0 = std::norm(s.h_bob.dot(u0));
  const double b1 = std::norm(s.h_bob.dot(u1));
  const double p = s.p_total;
  if (beta == 0.0) return BeamformerPair{std::sqrt(p) * u0, CVector::Zero(u1.size())};
  if (!(b1 > 0.0)) return std::nullopt;
  const double p0 = u0.isZero(0.0) ? 0.0 : (p - beta * s.sigma2_bob / b1) / (1.0 + beta * b0 / b1);
  if (p0 < 0.0) return std::nullopt;
  const double p1 = beta * (p0 * b0 + s.sigma2_bob) / b1;
  if (p0 + p1 > p * (1.0 + 1e-12)) return std::nullopt;
  return BeamformerPair{std::sqrt(p0) * u0, std::sqrt(p1) * u1};
}

// Cover power just meets the echo SINR floor, comm power takes the rest.
std::optional<BeamformerPair> repair_rate(const Scene& s, double gamma_sinr, const CMatrix& null_proj,
                                          const BeamformerPair& cand) {
  const CVector u0 = unit_or_zero(cand.cover);
  const CVector u1 = unit_or_zero(null_proj * cand.comm);
  const double a = echo_gain(s);
  const double t0 = a * std::norm(s.h_target.dot(u0));
  const double t1 = a * std::norm(s.h_target.dot(u1));
  const double p = s.p_total;
  if (gamma_sinr == 0.0) return BeamformerPair{CVector::Zero(u0.size()), std::sqrt(p) * u1};
  if (!(t0 > 0.0)) return std::nullopt;
  const double p1 = u1.isZero(0.0) ? 0.0 : (p - gamma_sinr * s.sigma2_radar / t0) / (1.0 + gamma_sinr * t1 / t0);
  if (p1 < 0.0) return std::nullopt;
  const double p0 = gamma_sinr * (p1 * t1 + s.sigma2_radar) / t0;
  if (p0 + p1 > p * (1.0 + 1e-12)) return std::nullopt;
  return BeamformerPair{std::sqrt(p0) * u0, std::sqrt(p1) * u1};
}

void add_warden_null(ConicProblem& p, const Scene& s) {
  p.add_affine(LinearForm{}.add(BlockId{1}, outer(s.h_warden_est)), Relation::kEqual, 0.0, "warden_null");
}

}  // namespace

ConicProblem mi_feasibility_problem(const Scene& scene, double i_r, double beta_sinr, bool enforce_covertness) {
  check_level(i_r, "i_r");
  check_level(beta_sinr, "beta_sinr");
  ConicProblem p = lifted_pair_problem(scene);
  add_echo_level(p, scene, i_r);
  add_bob_level(p, scene, beta_sinr);
  if (enforce_covertness) add_warden_null(p, scene);
  return p;
}

ConicProblem rate_feasibility_problem(const Scene& scene, double t, double gamma_mi) {
  check_level(t, "sinr level");
  check_level(gamma_mi, "gamma_mi");
  ConicProblem p = lifted_pair_problem(scene);
  add_bob_level(p, scene, t);
  add_echo_level(p, scene, radar_sinr_from_mi(gamma_mi));
  add_warden_null(p, scene);
  return p;
}

DesignResult maximize_mi_sdr(const Scene& scene, double beta_sinr, const DesignOptions& options) {
  check_level(beta_sinr, "beta_sinr");
  const Scene ns = detail::normalized(scene);
  DesignDiagnostics diag;
  const auto out = detail::bisect(
      radar_sinr_bound(ns), options.zeta,
      [&](double level) {
        return detail::solve_level(mi_feasibility_problem(ns, level, beta_sinr, options.enforce_covertness), diag);
      },
      diag, "Bob SINR floor unattainable within the power budget");
  diag = with_ranks(diag, out.lifted);

  const CMatrix null_proj = options.enforce_covertness ? detail::complement_projector({ns.h_warden_est})
                                                       : CMatrix::Identity(ns.n_antennas, ns.n_antennas);
  PairExtraction hooks;
  hooks.repair = [&](const BeamformerPair& c) { return repair_mi(ns, beta_sinr, null_proj, c); };
  hooks.objective = [&](const BeamformerPair& c) { return mi_radar(ns, c); };
  Rng rng = RngStreams(options.randomization_seed).make(Stream::kRandomization);
  const ExtractionOutcome ex = extract_rank1_pair(out.lifted.w0, out.lifted.w1, hooks, options.n_trials, rng);
  diag.randomization_trials = ex.trials;
  return detail::finish(scene, detail::scaled(ex.pair, std::sqrt(scene.p_total)), diag);
}

CVector zf_w1_closed_form(const Scene& scene, double beta_sinr) {
  scene.validate();
  check_level(beta_sinr, "beta_sinr");
  if (beta_sinr == 0.0) return CVector::Zero(scene.n_antennas);
  const CMatrix proj = detail::complement_projector({scene.h_target, scene.h_warden_est});
  const CVector ph = proj * scene.h_bob;
  if (ph.norm() < 1e-10) throw DesignInfeasible("zero-forcing comm beam: Bob lies in span{h_T, h_W}");
  return std::sqrt(beta_sinr * scene.sigma2_bob) * ph / ph.squaredNorm();
}

CVector zf_w1_sdp(const Scene& scene, double beta_sinr) {
  scene.validate();
  check_level(beta_sinr, "beta_sinr");
  if (beta_sinr == 0.0) return CVector::Zero(scene.n_antennas);
  // Solved for Y = W1 / (beta sigma_B^2), which has unit SINR requirement.
  const int n = scene.n_antennas;
  ConicProblem p;
  const BlockId y = p.add_psd_block("W1", n);
  p.set_objective(conic::Sense::kMinimize, LinearForm{}.add(y, CMatrix::Identity(n, n)));
  p.add_affine(LinearForm{}.add(y, outer(scene.h_target)), Relation::kEqual, 0.0, "target_null");
  p.add_affine(LinearForm{}.add(y, outer(scene.h_warden_est)), Relation::kEqual, 0.0, "warden_null");
  p.add_affine(LinearForm{}.add(y, outer(scene.h_bob)), Relation::kGreaterEqual, 1.0, "bob_sinr");
  const conic::ConicSolution sol = conic::solve(p);
  if (sol.status == conic::SolveStatus::kInfeasible) {
    throw DesignInfeasible("zero-forcing comm beam: trace SDP infeasible");
  }
  if (!sol.optimal()) throw SolverFailure(std::string("zero-forcing comm SDP: ") + conic::to_string(sol.status));
  return std::sqrt(beta_sinr * scene.sigma2_bob) * principal_component(sol.blocks.at("W1"));
}

CoverBeam zf_w0_closed_form(const Scene& scene, double p_remaining) {
  scene.validate();
  check_level(p_remaining, "p_remaining");
  const CVector qh = detail::complement_projector({scene.h_bob}) * scene.h_target;
  if (qh.norm() < 1e-10 * scene.h_target.norm()) return {CVector::Zero(scene.n_antennas), true};
  return {std::sqrt(p_remaining) * qh / qh.norm(), false};
}

CoverBeam zf_w0(const Scene& scene, double p_remaining) {
  scene.validate();
  check_level(p_remaining, "p_remaining");
  const int n = scene.n_antennas;
  const CMatrix q = detail::complement_projector({scene.h_bob});
  if ((q * scene.h_target).norm() < 1e-10 * scene.h_target.norm()) return {CVector::Zero(n), true};
  if (p_remaining == 0.0) return {CVector::Zero(n), false};

  // w0 = x_re + j x_im with ||w0|| <= 1 as [[I, w0], [w0^H, 1]] >= 0; scaled by sqrt(p) afterwards.
  ConicProblem p;
  std::vector<conic::ScalarId> re(n), im(n);
  for (int k = 0; k < n; ++k) {
    re[k] = p.add_scalar("re" + std::to_string(k), conic::ScalarDomain::kFree);
    im[k] = p.add_scalar("im" + std::to_string(k), conic::ScalarDomain::kFree);
  }
  conic::LmiConstraint ball;
  ball.dim = n + 1;
  ball.constant = CMatrix::Identity(n + 1, n + 1);
  ball.label = "norm_ball";
  for (int k = 0; k < n; ++k) {
    CMatrix cr = CMatrix::Zero(n + 1, n + 1);
    cr(k, n) = cr(n, k) = 1.0;
    CMatrix ci = CMatrix::Zero(n + 1, n + 1);
    ci(k, n) = cdouble(0.0, 1.0);
    ci(n, k) = cdouble(0.0, -1.0);
    ball.scalars.push_back({re[k], cr});
    ball.scalars.push_back({im[k], ci});
  }
  p.add_lmi(ball);
  // h^H w0 = sum conj(h_k) (x_k + j y_k): real part hr x + hi y, imaginary part hr y - hi x.
  auto inner = [&](const CVector& h, bool real_part) {
    LinearForm f;
    for (int k = 0; k < n; ++k) {
      const double hr = h[k].real(), hi = h[k].imag();
      f.add(re[k], real_part ? hr : -hi);
      f.add(im[k], real_part ? hi : hr);
    }
    return f;
  };
  p.set_objective(conic::Sense::kMaximize, inner(scene.h_target, true));
  p.add_affine(inner(scene.h_target, false), Relation::kEqual, 0.0, "target_phase");
  p.add_affine(inner(scene.h_bob, true), Relation::kEqual, 0.0, "bob_null_re");
  p.add_affine(inner(scene.h_bob, false), Relation::kEqual, 0.0, "bob_null_im");
  const conic::ConicSolution sol = conic::solve(p);
  if (!sol.optimal()) throw SolverFailure(std::string("zero-forcing cover SOCP: ") + conic::to_string(sol.status));

  CVector w(n);
  for (int k = 0; k < n; ++k)
    w[k] = cdouble(sol.scalars.at("re" + std::to_string(k)), sol.scalars.at("im" + std::to_string(k)));
  // Exact cleanup of solver-level residuals: null toward Bob, real target gain, norm cap.
  w = q * w;
  const cdouble g = scene.h_target.dot(w);
  if (std::abs(g) > 0.0) w *= std::conj(g) / std::abs(g);
  if (w.norm() > 1.0) w /= w.norm();
  return {std::sqrt(p_remaining) * w, false};
}

DesignResult maximize_mi_zf(const Scene& scene, double beta_sinr) {
  const CVector w1 = zf_w1_closed_form(scene, beta_sinr);
  const double p_rem = scene.p_total - w1.squaredNorm();
  if (p_rem < 0.0) throw DesignInfeasible("zero-forcing comm beam exceeds the power budget");
  const CoverBeam w0 = zf_w0(scene, p_rem);
  return detail::finish(scene, {w0.w0, w1}, DesignDiagnostics{});
}

DesignResult maximize_rate_perfect(const Scene& scene, double gamma_mi, const DesignOptions& options) {
  check_level(gamma_mi, "gamma_mi");
  const Scene ns = detail::normalized(scene);
  const double gamma_sinr = radar_sinr_from_mi(gamma_mi);
  const double bound = radar_sinr_bound(ns);
  if (gamma_sinr > bound * (1.0 + 1e-9)) throw DesignInfeasible("MI floor exceeds the detection-only bound");
  if (gamma_sinr >= bound * (1.0 - 1e-9)) {
    // Only the detection-only beam meets the floor.
    DesignDiagnostics diag;
    const CVector w0 = std::sqrt(scene.p_total) * scene.h_target / scene.h_target.norm();
    return detail::finish(scene, {w0, CVector::Zero(scene.n_antennas)}, diag);
  }
  DesignDiagnostics diag;
  const double upper = ns.h_bob.squaredNorm() * ns.p_total / ns.sigma2_bob;
  const auto out = detail::bisect(
      upper, options.zeta,
      [&](double t) { return detail::solve_level(rate_feasibility_problem(ns, t, gamma_mi), diag); }, diag,
      "MI floor unattainable within the power budget");
  diag = with_ranks(diag, out.lifted);

  const CMatrix null_proj = detail::complement_projector({ns.h_warden_est});
  PairExtraction hooks;
  hooks.repair = [&](const BeamformerPair& c) { return repair_rate(ns, gamma_sinr, null_proj, c); };
  hooks.objective = [&](const BeamformerPair& c) { return sinr_bob(ns, c); };
  Rng rng = RngStreams(options.randomization_seed).make(Stream::kRandomization);
  const ExtractionOutcome ex = extract_rank1_pair(out.lifted.w0, out.lifted.w1, hooks, options.n_trials, rng);
  diag.randomization_trials = ex.trials;
  return detail::finish(scene, detail::scaled(ex.pair, std::sqrt(scene.p_total)), diag);
}

}  // namespace covertbf
