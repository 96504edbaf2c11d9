#include <algorithm>
#include <cmath>
#include <numeric>

#include "covertbf/robust_designs.hpp"

namespace covertbf {

TrustRegionSolution trust_region_max(const CMatrix& a, const CVector& b, double radius2) {
  if (a.rows() != a.cols() || a.rows() != b.size()) throw InvalidInput("trust_region_max: dimension mismatch");
  if (!(radius2 >= 0.0)) throw InvalidInput("trust_region_max: radius must be >= 0");
  const Eigen::Index n = b.size();
  TrustRegionSolution out{0.0, CVector::Zero(n)};
  if (radius2 == 0.0) return out;

  Eigen::SelfAdjointEigenSolver<CMatrix> eig(hermitian_part(a));
  const RVector d = eig.eigenvalues();
  const CVector beta = eig.eigenvectors().adjoint() * b;
  const double dmax = d[n - 1];
  const double scale = std::max({std::abs(d[0]), std::abs(dmax), 1e-300});
  const double r = std::sqrt(radius2);
  CVector y(n);

  auto value_of = [&](const CVector& yy) {
    double v = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) v += d[i] * std::norm(yy[i]) + 2.0 * (std::conj(beta[i]) * yy[i]).real();
    return v;
  };
  auto finish = [&](const CVector& yy) {
    out.v = eig.eigenvectors() * yy;
    out.value = value_of(yy);
    return out;
  };

  // Concave objective with an interior maximizer.
  if (dmax < 0.0) {
    for (Eigen::Index i = 0; i < n; ++i) y[i] = -beta[i] / d[i];
    if (y.squaredNorm() <= radius2) return finish(y);
  }

  // Boundary: y_i = beta_i / (mu - d_i) with ||y|| = r and mu >= max(dmax, 0).
  std::vector<bool> top(static_cast<std::size_t>(n));
  double top_mass = 0.0;
  double rest_at_top = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    top[i] = d[i] >= dmax - 1e-12 * scale;
    if (top[i]) {
      top_mass += std::norm(beta[i]);
    } else {
      rest_at_top += std::norm(beta[i]) / ((dmax - d[i]) * (dmax - d[i]));
    }
  }
  const double bnorm2 = beta.squaredNorm();
  if (dmax >= 0.0 && top_mass <= 1e-28 * std::max(bnorm2, 1e-300) && rest_at_top <= radius2) {
    // Hard case: fill the remaining radius along the top eigenvector.
    int first_top = -1;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (top[i]) {
        y[i] = 0.0;
        if (first_top < 0) first_top = static_cast<int>(i);
      } else {
        y[i] = beta[i] / (dmax - d[i]);
      }
    }
    y[first_top] = std::sqrt(std::max(0.0, radius2 - rest_at_top));
    return finish(y);
  }

  const double floor_mu = std::max(dmax, 0.0);
  auto norm2_at = [&](double mu) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) s += std::norm(beta[i]) / ((mu - d[i]) * (mu - d[i]));
    return s;
  };
  // delta = mu - floor_mu; the norm decreases in delta, and delta_hi gives norm <= r^2.
  double lo = 0.0;
  double hi = std::sqrt(bnorm2) / r + 1e-300;
  for (int it = 0; it < 200; ++it) {
    const double mid = lo > 0.0 ? std::sqrt(lo * hi) : 0.5 * hi;
    if (mid <= lo || mid >= hi) break;
    if (norm2_at(floor_mu + mid) > radius2) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double mu = floor_mu + hi;
  for (Eigen::Index i = 0; i < n; ++i) y[i] = beta[i] / (mu - d[i]);
  const double yn = y.norm();
  if (yn > 0.0) y *= r / yn;
  return finish(y);
}

namespace {

// q(h) = |h^H w1|^2, den(h) = |h^H w0|^2 + sigma^2; ratio = 1 + q / den.
double power_ratio(const BeamformerPair& pair, const CVector& h, double sigma2_w) {
  return 1.0 + std::norm(h.dot(pair.comm)) / (std::norm(h.dot(pair.cover)) + sigma2_w);
}

}  // namespace

std::pair<double, CVector> worst_case_ratio(const BeamformerPair& pair, const RobustCovertSpec& spec, double sigma2_w) {
  spec.validate();
  const CVector& hh = spec.h_w_est;
  const Eigen::Index n = hh.size();
  if (!spec.error || pair.comm.isZero(0.0)) return {power_ratio(pair, hh, sigma2_w), CVector::Zero(n)};
  const CMatrix& s = spec.error->inverse_sqrt_shape();
  const double ups = spec.error->upsilon();
  const CMatrix a1 = pair.comm * pair.comm.adjoint();
  const CMatrix a0 = pair.cover * pair.cover.adjoint();

  // Dinkelbach: t <- q(h*) / den(h*) with h* maximizing q - t den over the ellipsoid.
  double t = power_ratio(pair, hh, sigma2_w) - 1.0;
  CVector best_delta = CVector::Zero(n);
  double best_ratio = 1.0 + t;
  for (int it = 0; it < 100; ++it) {
    const CMatrix m = a1 - t * a0;
    const TrustRegionSolution trs = trust_region_max(s * m * s, s * (m * hh), ups);
    const CVector delta = s * trs.v;
    const double ratio = power_ratio(pair, hh + delta, sigma2_w);
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best_delta = delta;
    }
    const double t_next = ratio - 1.0;
    if (t_next <= t * (1.0 + 1e-15) + 1e-300) break;
    t = t_next;
  }
  return {best_ratio, best_delta};
}

WorstCaseKl worst_case_kl(const BeamformerPair& pair, const RobustCovertSpec& spec, double sigma2_w, int n_samples) {
  spec.validate();
  if (n_samples < 1) throw InvalidInput("worst_case_kl: n_samples must be >= 1");
  if (!(sigma2_w > 0.0)) throw InvalidInput("worst_case_kl: noise power must be positive");
  const CVector& hh = spec.h_w_est;
  const Eigen::Index n = hh.size();
  auto kl_at = [&](double ratio) { return directional_kl(spec.direction, {1.0, ratio}); };
  if (!spec.error || pair.comm.isZero(0.0)) {
    return {kl_at(power_ratio(pair, hh, sigma2_w)), CVector::Zero(n)};
  }
  const EllipsoidError& e = *spec.error;
  const CMatrix& s = e.inverse_sqrt_shape();
  const double ups = e.upsilon();

  // Samples live in ball coordinates v (delta = S v, ||v||^2 <= upsilon).
  Rng rng(0x9e3779b97f4a7c15ULL);
  const EllipsoidError ball = EllipsoidError::identity(static_cast<int>(n), ups);
  std::vector<CVector> vs;
  std::vector<double> ratios;
  vs.reserve(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    const auto mode = i % 4 == 3 ? EllipsoidSampling::kInterior : EllipsoidSampling::kBoundary;
    vs.push_back(sample_ellipsoid_error(ball, rng, mode));
    ratios.push_back(power_ratio(pair, hh + s * vs.back(), sigma2_w));
  }

  double best = -1.0;
  CVector best_delta;
  auto consider = [&](const CVector& delta) {
    const double r = power_ratio(pair, hh + delta, sigma2_w);
    if (r > best) {
      best = r;
      best_delta = delta;
    }
  };
  for (int i = 0; i < n_samples; ++i) consider(s * vs[i]);

  // Projected gradient ascent in v, started from the top samples of every
  // prefix n, n/2, n/4, ... so the candidate set only grows with n_samples.
  const CVector w0s = s * pair.cover;
  const CVector w1s = s * pair.comm;
  auto ascend = [&](CVector v) {
    auto ratio_of = [&](const CVector& x) { return power_ratio(pair, hh + s * x, sigma2_w); };
    auto project = [&](CVector x) {
      const double nn = x.squaredNorm();
      if (nn > ups) x *= std::sqrt(ups / nn);
      return x;
    };
    double f = ratio_of(v);
    double step = 0.1 * std::sqrt(ups);
    for (int it = 0; it < 200 && step > 1e-12 * std::sqrt(ups); ++it) {
      const CVector h = hh + s * v;
      const cdouble g1 = pair.comm.dot(h);  // w1^H h
      const cdouble g0 = pair.cover.dot(h);
      const double q = std::norm(g1);
      const double den = std::norm(g0) + sigma2_w;
      const CVector grad = (den * (w1s * g1) - q * (w0s * g0)) / (den * den);
      const double gn = grad.norm();
      if (gn == 0.0) break;
      const CVector cand = project(v + (step / gn) * grad);
      const double fc = ratio_of(cand);
      if (fc > f) {
        v = cand;
        f = fc;
        step *= 1.5;
      } else {
        step *= 0.5;
      }
    }
    consider(s * v);
  };
  std::vector<int> starts;
  for (int m = n_samples; m >= 1; m /= 2) {
    std::vector<int> idx(static_cast<std::size_t>(m));
    std::iota(idx.begin(), idx.end(), 0);
    const int k = std::min(4, m);
    std::partial_sort(idx.begin(), idx.begin() + k, idx.end(),
                      [&](int a, int b) { return ratios[a] != ratios[b] ? ratios[a] > ratios[b] : a < b; });
    for (int j = 0; j < k; ++j) {
      if (std::find(starts.begin(), starts.end(), idx[j]) == starts.end()) starts.push_back(idx[j]);
    }
  }
  std::sort(starts.begin(), starts.end());
  for (int i : starts) ascend(vs[i]);

  consider(worst_case_ratio(pair, spec, sigma2_w).second);
  return {kl_at(best), best_delta};
}

}  // namespace covertbf
