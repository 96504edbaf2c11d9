#pragma once

#include <optional>

#include "covertbf/rng.hpp"
#include "covertbf/types.hpp"

namespace covertbf {

/// Ellipsoidal uncertainty set {dh : dh^H C dh <= upsilon} for the warden
/// channel estimate.
class EllipsoidError {
 public:
  /// Throws InvalidInput unless `shape` is square, Hermitian within 1e-12
  /// (relative) and positive semidefinite, and `upsilon > 0`.
  EllipsoidError(CMatrix shape, double upsilon);

  static EllipsoidError identity(int n, double upsilon);

  const CMatrix& shape() const { return shape_; }
  double upsilon() const { return upsilon_; }
  int dim() const { return static_cast<int>(shape_.rows()); }

  /// True when the shape matrix is positive definite (bounded set).
  bool bounded() const { return bounded_; }

  /// C^{-1/2}; maps the ball ||u||^2 <= upsilon onto the ellipsoid.
  /// Throws InvalidInput for a singular shape.
  const CMatrix& inverse_sqrt_shape() const;

  /// dh^H C dh
  double quadratic(const CVector& dh) const;

 private:
  CMatrix shape_;
  double upsilon_;
  bool bounded_ = false;
  CMatrix inv_sqrt_;
};

struct Scene {
  int n_antennas = 0;
  CVector h_target;      // h_T, the steering vector toward the target
  CVector h_bob;         // h_B
  CVector h_warden;      // h_W, ground truth
  CVector h_warden_est;  // radar-side estimate; equals h_warden under perfect CSI
  cdouble alpha{1.0, 0.0};
  double sigma2_radar = 1.0;
  double sigma2_bob = 1.0;
  double sigma2_warden = 1.0;
  double p_total = 10.0;

  /// Throws InvalidInput when dimensions or powers are inconsistent.
  void validate() const;
};

/// Half-wavelength uniform linear array response; entry k is exp(j*pi*k*sin(theta)).
CVector steering_vector(double theta, int n);

/// i.i.d. CN(0, variance) entries.
CVector sample_rayleigh(int n, double variance, Rng& rng);

enum class EllipsoidSampling { kInterior, kBoundary };

/// Interior mode draws uniformly (in the metric induced by C) from the
/// ellipsoid; boundary mode draws from its surface.
CVector sample_ellipsoid_error(const EllipsoidError& e, Rng& rng, EllipsoidSampling mode);

/// Raw, unit-bearing scene parameters as they appear in experiment configs.
struct SceneConfig {
  int n_antennas = 5;
  double theta_deg = 30.0;
  double p_total_dbm = 10.0;
  double sigma_r_dbm = 0.0;
  double sigma_b_dbm = 0.0;
  double sigma_w_dbm = 0.0;
  double alpha = 1.0;
  double channel_var_bob = 1.0;
  double channel_var_warden = 1.0;
  std::uint64_t seed = 42;
  /// Absent means perfect warden CSI.
  std::optional<EllipsoidError> csi_error;
};

/// Converts dBm fields to mW, builds the steering vector and draws the
/// Bob/warden channels from `rng`. With CSI error, the estimate is the Rayleigh
/// draw and the truth is estimate + an interior ellipsoid sample.
Scene scene_from_config(const SceneConfig& config, Rng& rng);

}  // namespace covertbf
