#pragma once

#include "covertbf/beamformer.hpp"
#include "covertbf/scene.hpp"

namespace covertbf {

/// Mean received power at the warden without (lambda0) and with (lambda1)
/// the covert stream.
struct LambdaPair {
  double lambda0 = 1.0;
  double lambda1 = 1.0;

  /// Throws InvalidInput unless lambda1 >= lambda0 > 0.
  void validate() const;
};

struct DetectionReport {
  double p_fa = 0.0;
  double p_md = 0.0;
  double xi = 1.0;
  double phi_star = 0.0;
};

/// Roots a_bar < 1 < b_bar of ln x + 1/x - 1 = 2 eps^2.
struct CovertInterval {
  double a_bar = 1.0;
  double b_bar = 1.0;
};

LambdaPair lambda_pair(const CVector& h_w, const CVector& cover, const CVector& comm, double sigma2_w);

/// D(p0 || p1) = ln(l1/l0) + l0/l1 - 1
double kl_p0_p1(const LambdaPair& lp);
/// D(p1 || p0) = ln(l0/l1) + l1/l0 - 1
double kl_p1_p0(const LambdaPair& lp);

/// f(x) = ln x + 1/x - 1; both KL divergences are f of a power ratio.
double kl_shape(double x);

/// Likelihood-ratio threshold on |y_W|^2; tends to lambda0 as lambda1 -> lambda0.
double optimal_threshold(const LambdaPair& lp);

/// Error probabilities of the warden's optimal detector, with the continuous
/// extension (p_fa = 1/e, p_md = 1 - 1/e, xi = 1) at lambda1 == lambda0.
DetectionReport detection_error_probs(const LambdaPair& lp);

/// Total error P_FA + P_MD of the energy detector at an arbitrary threshold.
double total_error_at_threshold(const LambdaPair& lp, double phi);

/// Likelihood of |y_W|^2 = x under CN(0, lambda): exp(-x/lambda)/lambda.
double received_power_density(double lambda, double x);

CovertInterval covert_interval(double epsilon);

/// Radar mutual information in bits (1/2 log2 of one plus the echo SINR).
double mi_radar(const Scene& scene, const BeamformerPair& pair);
/// The echo SINR inside mi_radar.
double radar_sinr(const Scene& scene, const BeamformerPair& pair);
/// Largest MI any design can reach: all power on the target direction, no comm.
double detection_only_mi_bound(const Scene& scene);
/// |alpha|^2 P ||h_T||^4 / sigma_R^2, the Cauchy-Schwarz bound on radar_sinr.
double radar_sinr_bound(const Scene& scene);

double sinr_bob(const Scene& scene, const BeamformerPair& pair);
double rate_bob(const Scene& scene, const BeamformerPair& pair);

/// SINR threshold equivalent to a rate floor in bits/s/Hz.
inline double sinr_from_rate(double rate_bits) { return std::exp2(rate_bits) - 1.0; }
/// Echo SINR level equivalent to an MI floor in bits (inverts the 1/2 log2).
inline double radar_sinr_from_mi(double mi_bits) { return std::exp2(2.0 * mi_bits) - 1.0; }

KlReport kl_report(const Scene& scene, const BeamformerPair& pair, const CVector& h_w);

}  // namespace covertbf
