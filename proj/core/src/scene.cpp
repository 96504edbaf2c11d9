#include "covertbf/scene.hpp"

#include <cmath>
#include <numbers>

namespace covertbf {

EllipsoidError::EllipsoidError(CMatrix shape, double upsilon) : shape_(std::move(shape)), upsilon_(upsilon) {
  if (shape_.rows() == 0 || shape_.rows() != shape_.cols()) {
    throw InvalidInput("EllipsoidError: shape must be a nonempty square matrix");
  }
  if (!(upsilon_ > 0.0) || !std::isfinite(upsilon_)) {
    throw InvalidInput("EllipsoidError: upsilon must be positive and finite");
  }
  const double asym = (shape_ - shape_.adjoint()).norm();
  if (asym > 1e-12 * std::max(1.0, shape_.norm())) {
    throw InvalidInput("EllipsoidError: shape must be Hermitian");
  }
  shape_ = hermitian_part(shape_);
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(shape_);
  const RVector& ev = eig.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  if (ev.minCoeff() < -1e-12 * scale) {
    throw InvalidInput("EllipsoidError: shape must be positive semidefinite");
  }
  bounded_ = ev.minCoeff() > 1e-12 * scale;
  if (bounded_) {
    RVector inv_sqrt = ev.cwiseSqrt().cwiseInverse();
    inv_sqrt_ = eig.eigenvectors() * inv_sqrt.asDiagonal() * eig.eigenvectors().adjoint();
  }
}

EllipsoidError EllipsoidError::identity(int n, double upsilon) {
  return EllipsoidError(CMatrix::Identity(n, n), upsilon);
}

const CMatrix& EllipsoidError::inverse_sqrt_shape() const {
  if (!bounded_) {
    throw InvalidInput("EllipsoidError: singular shape matrix has no inverse square root");
  }
  return inv_sqrt_;
}

double EllipsoidError::quadratic(const CVector& dh) const { return dh.dot(shape_ * dh).real(); }

void Scene::validate() const {
  if (n_antennas < 2) throw InvalidInput("Scene: n_antennas must be >= 2");
  const auto n = static_cast<Eigen::Index>(n_antennas);
  if (h_target.size() != n || h_bob.size() != n || h_warden.size() != n || h_warden_est.size() != n) {
    throw InvalidInput("Scene: channel vectors must have length n_antennas");
  }
  if (!(sigma2_radar > 0) || !(sigma2_bob > 0) || !(sigma2_warden > 0)) {
    throw InvalidInput("Scene: noise powers must be positive");
  }
  if (!(p_total > 0)) throw InvalidInput("Scene: p_total must be positive");
}

CVector steering_vector(double theta, int n) {
  if (n < 1) throw InvalidInput("steering_vector: n must be >= 1");
  CVector a(n);
  const double phase = std::numbers::pi * std::sin(theta);
  for (int k = 0; k < n; ++k) a(k) = std::polar(1.0, phase * k);
  return a;
}

CVector sample_rayleigh(int n, double variance, Rng& rng) {
  if (variance < 0.0) throw InvalidInput("sample_rayleigh: variance must be nonnegative");
  if (n < 0) throw InvalidInput("sample_rayleigh: n must be nonnegative");
  CVector h = CVector::Zero(n);
  if (variance == 0.0) return h;
  std::normal_distribution<double> gauss(0.0, std::sqrt(variance / 2.0));
  for (int k = 0; k < n; ++k) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    h(k) = {re, im};
  }
  return h;
}

CVector sample_ellipsoid_error(const EllipsoidError& e, Rng& rng, EllipsoidSampling mode) {
  const CMatrix& map = e.inverse_sqrt_shape();
  const int n = e.dim();
  // Direction uniform on the unit sphere of C^n = R^{2n}.
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVector g(n);
  double norm2 = 0.0;
  do {
    for (int k = 0; k < n; ++k) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(k) = {re, im};
    }
    norm2 = g.squaredNorm();
  } while (norm2 == 0.0);
  g /= std::sqrt(norm2);

  double radius = std::sqrt(e.upsilon());
  if (mode == EllipsoidSampling::kInterior) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    radius *= std::pow(unif(rng), 1.0 / (2.0 * n));
  }
  CVector dh = map * (radius * g);
  if (mode == EllipsoidSampling::kBoundary) {
    // Remove the rounding drift so the sample sits on the surface.
    const double q = e.quadratic(dh);
    if (q > 0) dh *= std::sqrt(e.upsilon() / q);
  }
  return dh;
}

Scene scene_from_config(const SceneConfig& config, Rng& rng) {
  if (config.n_antennas < 2) throw InvalidInput("n_antennas: must be >= 2");
  Scene s;
  s.n_antennas = config.n_antennas;
  s.h_target = steering_vector(config.theta_deg * std::numbers::pi / 180.0, config.n_antennas);
  s.h_bob = sample_rayleigh(config.n_antennas, config.channel_var_bob, rng);
  s.h_warden_est = sample_rayleigh(config.n_antennas, config.channel_var_warden, rng);
  s.h_warden = s.h_warden_est;
  if (config.csi_error) {
    if (config.csi_error->dim() != config.n_antennas) {
      throw InvalidInput("csi_error.c_shape: dimension must equal n_antennas");
    }
    s.h_warden = s.h_warden_est + sample_ellipsoid_error(*config.csi_error, rng, EllipsoidSampling::kInterior);
  }
  s.alpha = config.alpha;
  s.sigma2_radar = db_to_linear(config.sigma_r_dbm);
  s.sigma2_bob = db_to_linear(config.sigma_b_dbm);
  s.sigma2_warden = db_to_linear(config.sigma_w_dbm);
  s.p_total = db_to_linear(config.p_total_dbm);
  s.validate();
  return s;
}

}  // namespace covertbf
