#include "covertbf/covert_metrics.hpp"

#include <cmath>

namespace covertbf {

namespace {

// ln(1+d)/d, continuous at d = 0.
double log1p_ratio(double d) {
  if (std::abs(d) < 1e-8) return 1.0 - d / 2.0 + d * d / 3.0;
  return std::log1p(d) / d;
}

// Relative power increase (lambda1 - lambda0) / lambda0.
double relative_increase(const LambdaPair& lp) { return (lp.lambda1 - lp.lambda0) / lp.lambda0; }

}  // namespace

void LambdaPair::validate() const {
  if (!(lambda0 > 0.0) || !std::isfinite(lambda0) || !std::isfinite(lambda1)) {
    throw InvalidInput("LambdaPair: lambda0 must be positive and finite");
  }
  if (lambda1 < lambda0) throw InvalidInput("LambdaPair: lambda1 must be >= lambda0");
}

LambdaPair lambda_pair(const CVector& h_w, const CVector& cover, const CVector& comm, double sigma2_w) {
  if (h_w.size() != cover.size() || h_w.size() != comm.size()) {
    throw InvalidInput("lambda_pair: dimension mismatch");
  }
  if (!(sigma2_w > 0.0)) throw InvalidInput("lambda_pair: sigma2_w must be positive");
  LambdaPair lp;
  lp.lambda0 = std::norm(h_w.dot(cover)) + sigma2_w;
  lp.lambda1 = lp.lambda0 + std::norm(h_w.dot(comm));
  return lp;
}

double kl_shape(double x) {
  if (!(x > 0.0)) throw InvalidInput("kl_shape: argument must be positive");
  const double d = x - 1.0;
  return std::log1p(d) - d / x;
}

double kl_p0_p1(const LambdaPair& lp) {
  lp.validate();
  return kl_shape(lp.lambda1 / lp.lambda0);
}

double kl_p1_p0(const LambdaPair& lp) {
  lp.validate();
  return kl_shape(lp.lambda0 / lp.lambda1);
}

double optimal_threshold(const LambdaPair& lp) {
  lp.validate();
  const double d = relative_increase(lp);
  return lp.lambda0 * (1.0 + d) * log1p_ratio(d);
}

DetectionReport detection_error_probs(const LambdaPair& lp) {
  lp.validate();
  const double d = relative_increase(lp);
  const double l = log1p_ratio(d);
  DetectionReport r;
  r.phi_star = lp.lambda0 * (1.0 + d) * l;
  r.p_fa = std::exp(-(1.0 + d) * l);
  r.p_md = -std::expm1(-l);
  r.xi = r.p_fa + r.p_md;
  if (d == 0.0) r.xi = 1.0;
  return r;
}

double total_error_at_threshold(const LambdaPair& lp, double phi) {
  lp.validate();
  if (phi <= 0.0) return 1.0;
  return std::exp(-phi / lp.lambda0) - std::expm1(-phi / lp.lambda1);
}

double received_power_density(double lambda, double x) { return std::exp(-x / lambda) / lambda; }

CovertInterval covert_interval(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidInput("covert_interval: epsilon must be positive");
  }
  const double target = 2.0 * epsilon * epsilon;
  auto g = [&](double x) { return kl_shape(x) - target; };
  auto fprime = [](double x) { return (x - 1.0) / (x * x); };

  // g is decreasing on (0,1) and increasing on (1,inf), zero target at x=1 is negative.
  auto solve = [&](double lo, double hi, bool decreasing) {
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      const bool above = g(mid) > 0.0;
      if (above == decreasing) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 5; ++it) {
      const double fp = fprime(x);
      if (fp == 0.0) break;
      const double next = x - g(x) / fp;
      if (!(next > lo - (hi - lo)) || !(next < hi + (hi - lo))) break;
      if (std::abs(g(next)) >= std::abs(g(x))) break;
      x = next;
    }
    return x;
  };

  double lo = std::max(1e-12, std::exp(-target - 2.0));
  while (g(lo) < 0.0 && lo > 1e-300) lo *= 0.5;
  double hi = 1.0 + 4.0 * epsilon + 8.0 * epsilon * epsilon;
  while (g(hi) < 0.0) hi *= 2.0;

  CovertInterval ci;
  ci.a_bar = solve(lo, 1.0, true);
  ci.b_bar = solve(1.0, hi, false);
  return ci;
}

double radar_sinr(const Scene& scene, const BeamformerPair& pair) {
  const auto n = scene.h_target.size();
  if (pair.cover.size() != n || pair.comm.size() != n) throw InvalidInput("radar_sinr: dimension mismatch");
  const double gain = std::norm(scene.alpha) * scene.h_target.squaredNorm();
  const double signal = gain * std::norm(scene.h_target.dot(pair.cover));
  const double interference = gain * std::norm(scene.h_target.dot(pair.comm));
  return signal / (interference + scene.sigma2_radar);
}

double mi_radar(const Scene& scene, const BeamformerPair& pair) {
  return 0.5 * std::log2(1.0 + radar_sinr(scene, pair));
}

double radar_sinr_bound(const Scene& scene) {
  const double nt = scene.h_target.squaredNorm();
  return std::norm(scene.alpha) * scene.p_total * nt * nt / scene.sigma2_radar;
}

double detection_only_mi_bound(const Scene& scene) { return 0.5 * std::log2(1.0 + radar_sinr_bound(scene)); }

double sinr_bob(const Scene& scene, const BeamformerPair& pair) {
  const auto n = scene.h_bob.size();
  if (pair.cover.size() != n || pair.comm.size() != n) throw InvalidInput("sinr_bob: dimension mismatch");
  return std::norm(scene.h_bob.dot(pair.comm)) / (std::norm(scene.h_bob.dot(pair.cover)) + scene.sigma2_bob);
}

double rate_bob(const Scene& scene, const BeamformerPair& pair) { return std::log2(1.0 + sinr_bob(scene, pair)); }

KlReport kl_report(const Scene& scene, const BeamformerPair& pair, const CVector& h_w) {
  const LambdaPair lp = lambda_pair(h_w, pair.cover, pair.comm, scene.sigma2_warden);
  return {kl_p0_p1(lp), kl_p1_p0(lp)};
}

}  // namespace covertbf
