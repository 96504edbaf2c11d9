#include "covertbf/robust_designs.hpp"

#include <cmath>

#include "covertbf/conic/solver.hpp"
#include "covertbf/randomization.hpp"
#include "design_common.hpp"

namespace covertbf {

using conic::BlockId;
using conic::ConicProblem;
using conic::LinearForm;
using conic::Relation;
using conic::ScalarId;
using detail::outer;
using detail::unit_or_zero;

void RobustCovertSpec::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw InvalidInput("RobustCovertSpec: epsilon must be > 0");
  if (h_w_est.size() == 0) throw InvalidInput("RobustCovertSpec: missing warden channel estimate");
  if (error && error->dim() != h_w_est.size()) throw InvalidInput("RobustCovertSpec: error shape dimension mismatch");
}

std::pair<double, double> RobustCovertSpec::ratio_bounds() const {
  const CovertInterval ci = covert_interval(epsilon);
  if (direction == KlDirection::kP0P1) return {ci.a_bar, ci.b_bar};
  return {1.0 / ci.b_bar, 1.0 / ci.a_bar};
}

RobustCovertSpec nominal(const RobustCovertSpec& spec) {
  RobustCovertSpec s = spec;
  s.error.reset();
  return s;
}

double directional_kl(KlDirection direction, const LambdaPair& lp) {
  return direction == KlDirection::kP0P1 ? kl_p0_p1(lp) : kl_p1_p0(lp);
}

std::pair<conic::LmiConstraint, conic::LmiConstraint> build_robust_lmis(const RobustCovertSpec& spec,
                                                                        const RobustLmiHandles& vars, double sigma2_w) {
  spec.validate();
  if (!spec.error) throw InvalidInput("build_robust_lmis: spec has no uncertainty set");
  const auto [lo, hi] = spec.ratio_bounds();
  const int n = static_cast<int>(spec.h_w_est.size());
  // E = [I, h]: E^H X E = [[X, X h], [h^H X, h^H X h]].
  CMatrix e(n, n + 1);
  e.leftCols(n) = CMatrix::Identity(n, n);
  e.col(n) = spec.h_w_est;
  CMatrix multiplier = CMatrix::Zero(n + 1, n + 1);
  multiplier.topLeftCorner(n, n) = spec.error->shape();
  multiplier(n, n) = -spec.error->upsilon();

  // lambda1 - lo lambda0 >= 0:  h^H ((1 - lo) W0 + W1) h + sigma^2 (1 - lo) >= 0.
  conic::LmiConstraint lower;
  lower.dim = n + 1;
  lower.label = "ratio_lower";
  lower.constant = CMatrix::Zero(n + 1, n + 1);
  lower.constant(n, n) = sigma2_w * (1.0 - lo);
  lower.blocks = {{vars.w0, 1.0 - lo, e}, {vars.w1, 1.0, e}};
  lower.scalars = {{vars.eta1, multiplier}};

  // hi lambda0 - lambda1 >= 0:  -h^H ((1 - hi) W0 + W1) h + sigma^2 (hi - 1) >= 0.
  conic::LmiConstraint upper;
  upper.dim = n + 1;
  upper.label = "ratio_upper";
  upper.constant = CMatrix::Zero(n + 1, n + 1);
  upper.constant(n, n) = sigma2_w * (hi - 1.0);
  upper.blocks = {{vars.w0, hi - 1.0, e}, {vars.w1, -1.0, e}};
  upper.scalars = {{vars.eta2, multiplier}};
  return {lower, upper};
}

namespace {

void add_covertness(ConicProblem& p, const Scene& s, const RobustCovertSpec& spec) {
  spec.validate();
  if (spec.h_w_est.size() != s.n_antennas) throw InvalidInput("RobustCovertSpec: channel dimension mismatch");
  if (spec.error) {
    RobustLmiHandles h{BlockId{0}, BlockId{1}, p.add_scalar("eta1", conic::ScalarDomain::kNonnegative),
                       p.add_scalar("eta2", conic::ScalarDomain::kNonnegative)};
    auto [lower, upper] = build_robust_lmis(spec, h, s.sigma2_warden);
    p.add_lmi(std::move(lower));
    p.add_lmi(std::move(upper));
    return;
  }
  const auto [lo, hi] = spec.ratio_bounds();
  const CMatrix hh = outer(spec.h_w_est);
  p.add_affine(LinearForm{}.add(BlockId{0}, (1.0 - lo) * hh).add(BlockId{1}, hh), Relation::kGreaterEqual,
               -s.sigma2_warden * (1.0 - lo), "ratio_lower");
  p.add_affine(LinearForm{}.add(BlockId{0}, (hi - 1.0) * hh).add(BlockId{1}, -hh), Relation::kGreaterEqual,
               -s.sigma2_warden * (hi - 1.0), "ratio_upper");
}

// max over the uncertainty set of lambda1 - hi lambda0 (<= 0 means covert).
double ratio_excess(const BeamformerPair& pair, const RobustCovertSpec& spec, double hi, double sigma2_w) {
  const CMatrix m = outer(pair.comm) - (hi - 1.0) * outer(pair.cover);
  const CVector& h = spec.h_w_est;
  const double base = h.dot(m * h).real() - (hi - 1.0) * sigma2_w;
  if (!spec.error) return base;
  const CMatrix& s = spec.error->inverse_sqrt_shape();
  return base + trust_region_max(s * m * s, s * (m * h), spec.error->upsilon()).value;
}

// Largest x in [0, x_max] with g(x) <= 0 for convex g; nullopt if none.
std::optional<double> largest_feasible(const std::function<double(double)>& g, double x_max) {
  if (g(x_max) <= 0.0) return x_max;
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = 0.0, b = x_max;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double gc = g(c), gd = g(d);
  for (int it = 0; it < 80 && b - a > 1e-15 * x_max; ++it) {
    if (gc <= 0.0 || gd <= 0.0) break;
    if (gc < gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - phi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + phi * (b - a);
      gd = g(d);
    }
  }
  double lo;
  if (gd <= 0.0) {
    lo = d;
  } else if (gc <= 0.0) {
    lo = c;
  } else if (g(0.0) <= 0.0) {
    lo = 0.0;
  } else {
    return std::nullopt;
  }
  double hi = x_max;
  for (int it = 0; it < 100 && hi - lo > 1e-15 * x_max; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) <= 0.0 ? lo : hi) = mid;
  }
  return lo;
}

// Bob SINR at equality, then the largest cover power (echo SINR increases with it)
// that keeps the worst-case power ratio below hi.
std::optional<BeamformerPair> repair_mi_robust(const Scene& s, double beta, const RobustCovertSpec& spec, double hi,
                                               const BeamformerPair& cand) {
  const CVector u0 = unit_or_zero(cand.cover);
  const CVector u1 = unit_or_zero(cand.comm);
  const double p = s.p_total;
  if (beta == 0.0) return BeamformerPair{std::sqrt(p) * u0, CVector::Zero(u1.size())};
  const double b0 = std::norm(s.h_bob.dot(u0));
  const double b1 = std::norm(s.h_bob.dot(u1));
  if (!(b1 > 0.0)) return std::nullopt;
  const double p0_max = u0.isZero(0.0) ? 0.0 : (p - beta * s.sigma2_bob / b1) / (1.0 + beta * b0 / b1);
  if (p0_max < 0.0) return std::nullopt;
  auto build = [&](double p0) {
    const double p1 = beta * (p0 * b0 + s.sigma2_bob) / b1;
    return BeamformerPair{std::sqrt(p0) * u0, std::sqrt(p1) * u1};
  };
  const auto p0 = largest_feasible([&](double x) { return ratio_excess(build(x), spec, hi, s.sigma2_warden); }, p0_max);
  if (!p0) return std::nullopt;
  BeamformerPair out = build(*p0);
  if (out.power() > p * (1.0 + 1e-12)) return std::nullopt;
  return out;
}

// For each cover power, the comm power is the largest allowed by the MI floor,
// the budget and covertness; the cover power is then chosen to maximize Bob's SINR.
std::optional<BeamformerPair> repair_rate_robust(const Scene& s, double gamma_sinr, const RobustCovertSpec& spec,
                                                 double hi, const BeamformerPair& cand) {
  const CVector u0 = unit_or_zero(cand.cover);
  const CVector u1 = unit_or_zero(cand.comm);
  const double p = s.p_total;
  const double a = detail::echo_gain(s);
  const double t0 = a * std::norm(s.h_target.dot(u0));
  const double t1 = a * std::norm(s.h_target.dot(u1));
  const double b0 = std::norm(s.h_bob.dot(u0));
  const double b1 = std::norm(s.h_bob.dot(u1));
  if (gamma_sinr > 0.0 && !(t0 > 0.0)) return std::nullopt;
  const double p0_min = gamma_sinr > 0.0 ? gamma_sinr * s.sigma2_radar / t0 : 0.0;
  if (p0_min > p) return std::nullopt;

  auto comm_power = [&](double p0) {
    double p1 = p - p0;
    if (gamma_sinr > 0.0 && t1 > 0.0) p1 = std::min(p1, (p0 * t0 / gamma_sinr - s.sigma2_radar) / t1);
    if (p1 <= 0.0 || u1.isZero(0.0)) return 0.0;
    const BeamformerPair probe{std::sqrt(p0) * u0, u1};
    const double worst = worst_case_ratio(probe, spec, s.sigma2_warden).first - 1.0;
    if (worst > 0.0) p1 = std::min(p1, (hi - 1.0) / worst);
    return std::max(p1, 0.0);
  };
  auto sinr = [&](double p0) { return comm_power(p0) * b1 / (p0 * b0 + s.sigma2_bob); };

  const int grid = 32;
  double best_x = p0_min, best_v = sinr(p0_min);
  for (int i = 1; i <= grid; ++i) {
    const double x = p0_min + (p - p0_min) * i / grid;
    const double v = sinr(x);
    if (v > best_v) best_x = x, best_v = v;
  }
  double lo = std::max(p0_min, best_x - (p - p0_min) / grid), hi_x = std::min(p, best_x + (p - p0_min) / grid);
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 60; ++it) {
    const double c = hi_x - phi * (hi_x - lo), d = lo + phi * (hi_x - lo);
    if (sinr(c) >= sinr(d)) {
      hi_x = d;
    } else {
      lo = c;
    }
  }
  const double mid = 0.5 * (lo + hi_x);
  const double p0 = sinr(mid) > best_v ? mid : best_x;
  const double p1 = comm_power(p0);
  BeamformerPair out{std::sqrt(p0) * u0, std::sqrt(p1) * u1};
  if (out.power() > p * (1.0 + 1e-12)) return std::nullopt;
  if (ratio_excess(out, spec, hi, s.sigma2_warden) > 0.0) return std::nullopt;
  return out;
}

using Repair =
    std::function<std::optional<BeamformerPair>(const Scene&, const RobustCovertSpec&, double, const BeamformerPair&)>;

// Shared tail of the robust designs: extraction with certified repair.
RobustDesignResult extract_robust(const Scene& scene, const Scene& ns, const RobustCovertSpec& spec,
                                  const detail::BisectionOutcome& out, DesignDiagnostics diag, const Repair& repair,
                                  const std::function<double(const BeamformerPair&)>& objective,
                                  const DesignOptions& options) {
  // The lifted problem was solved with a small margin, so principal candidates
  // get the full budget; randomized ones keep 1% and must also pass the sampled
  // worst-case check.
  RobustCovertSpec loose = spec;
  loose.epsilon = spec.epsilon * std::sqrt(0.99);
  const double hi_principal = spec.ratio_bounds().second;
  const double hi_random = loose.ratio_bounds().second;

  PairExtraction hooks;
  hooks.repair = [&](const BeamformerPair& c) { return repair(ns, spec, hi_principal, c); };
  hooks.repair_randomized = [&](const BeamformerPair& c) { return repair(ns, spec, hi_random, c); };
  hooks.objective = objective;
  hooks.accept_randomized = [&](const BeamformerPair& c) {
    return worst_case_kl(c, spec, ns.sigma2_warden, 2000).kl <= 0.99 * spec.budget() * (1.0 + 1e-9);
  };
  Rng rng = RngStreams(options.randomization_seed).make(Stream::kRandomization);
  const ExtractionOutcome ex = extract_rank1_pair(out.lifted.w0, out.lifted.w1, hooks, options.n_trials, rng);
  diag.randomization_trials = ex.trials;

  RobustDesignResult r;
  const BeamformerPair pair = detail::scaled(ex.pair, std::sqrt(scene.p_total));
  r.design = detail::finish(scene, pair, diag);
  const auto& sc = out.lifted.solution.scalars;
  if (sc.count("eta1")) r.certificate = {sc.at("eta1"), sc.at("eta2")};
  r.worst_case_kl = directional_kl(spec.direction, {1.0, worst_case_ratio(pair, spec, scene.sigma2_warden).first});
  return r;
}

// Covertness budget used inside the bisection; leaves room for solver tolerance.
RobustCovertSpec with_margin(const RobustCovertSpec& spec) {
  RobustCovertSpec tight = spec;
  tight.epsilon = spec.epsilon * std::sqrt(1.0 - 1e-4);
  return tight;
}

}  // namespace

ConicProblem robust_mi_feasibility_problem(const Scene& scene, const RobustCovertSpec& spec, double i_r,
                                           double beta_sinr) {
  detail::check_level(i_r, "i_r");
  detail::check_level(beta_sinr, "beta_sinr");
  ConicProblem p = detail::lifted_pair_problem(scene);
  detail::add_echo_level(p, scene, i_r);
  detail::add_bob_level(p, scene, beta_sinr);
  add_covertness(p, scene, spec);
  return p;
}

ConicProblem robust_rate_feasibility_problem(const Scene& scene, const RobustCovertSpec& spec, double t,
                                             double gamma_mi) {
  detail::check_level(t, "sinr level");
  detail::check_level(gamma_mi, "gamma_mi");
  ConicProblem p = detail::lifted_pair_problem(scene);
  detail::add_bob_level(p, scene, t);
  detail::add_echo_level(p, scene, radar_sinr_from_mi(gamma_mi));
  add_covertness(p, scene, spec);
  return p;
}

RobustDesignResult maximize_mi_robust(const Scene& scene, const RobustCovertSpec& spec, double beta_sinr,
                                      const DesignOptions& options) {
  detail::check_level(beta_sinr, "beta_sinr");
  spec.validate();
  const Scene ns = detail::normalized(scene);
  const RobustCovertSpec tight = with_margin(spec);
  DesignDiagnostics diag;
  const auto out = detail::bisect(
      radar_sinr_bound(ns), options.zeta,
      [&](double level) {
        return detail::solve_level(robust_mi_feasibility_problem(ns, tight, level, beta_sinr), diag);
      },
      diag, "Bob SINR floor unattainable under the covertness constraint");
  diag = detail::with_ranks(diag, out.lifted);
  return extract_robust(
      scene, ns, spec, out, diag,
      [&](const Scene& s, const RobustCovertSpec& sp, double hi, const BeamformerPair& c) {
        return repair_mi_robust(s, beta_sinr, sp, hi, c);
      },
      [&](const BeamformerPair& c) { return mi_radar(ns, c); }, options);
}

RobustDesignResult maximize_rate_robust(const Scene& scene, const RobustCovertSpec& spec, double gamma_mi,
                                        const DesignOptions& options) {
  detail::check_level(gamma_mi, "gamma_mi");
  spec.validate();
  const Scene ns = detail::normalized(scene);
  const double gamma_sinr = radar_sinr_from_mi(gamma_mi);
  if (gamma_sinr > radar_sinr_bound(ns) * (1.0 + 1e-9)) {
    throw DesignInfeasible("MI floor exceeds the detection-only bound");
  }
  const RobustCovertSpec tight = with_margin(spec);
  DesignDiagnostics diag;
  const double upper = ns.h_bob.squaredNorm() * ns.p_total / ns.sigma2_bob;
  const auto out = detail::bisect(
      upper, options.zeta,
      [&](double t) { return detail::solve_level(robust_rate_feasibility_problem(ns, tight, t, gamma_mi), diag); },
      diag, "MI floor unattainable within the power budget");
  diag = detail::with_ranks(diag, out.lifted);
  return extract_robust(
      scene, ns, spec, out, diag,
      [&](const Scene& s, const RobustCovertSpec& sp, double hi, const BeamformerPair& c) {
        return repair_rate_robust(s, gamma_sinr, sp, hi, c);
      },
      [&](const BeamformerPair& c) { return sinr_bob(ns, c); }, options);
}

}  // namespace covertbf
