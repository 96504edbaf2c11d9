#pragma once

#include <cstdint>

#include "covertbf/beamformer.hpp"
#include "covertbf/conic/problem.hpp"
#include "covertbf/scene.hpp"

namespace covertbf {

struct DesignOptions {
  /// Bisection stops once the level interval is below zeta times its initial width.
  double zeta = 1e-8;
  int n_trials = 500;
  std::uint64_t randomization_seed = 0;
  /// When false the warden constraint is dropped entirely (non-covert reference).
  bool enforce_covertness = true;
};

/// Lifted feasibility problem for the MI design at echo SINR level i_r:
/// variables W0, W1 with the echo SINR, Bob SINR, warden-null and power constraints.
conic::ConicProblem mi_feasibility_problem(const Scene& scene, double i_r, double beta_sinr,
                                           bool enforce_covertness = true);

/// Lifted feasibility problem for the rate design at Bob SINR level t with an
/// MI floor of gamma_mi bits.
conic::ConicProblem rate_feasibility_problem(const Scene& scene, double t, double gamma_mi);

DesignResult maximize_mi_sdr(const Scene& scene, double beta_sinr, const DesignOptions& options = {});

/// Minimum-power zero-forcing comm beam, orthogonal to the target and warden.
CVector zf_w1_closed_form(const Scene& scene, double beta_sinr);
/// Same beam from its trace-minimization SDP.
CVector zf_w1_sdp(const Scene& scene, double beta_sinr);

struct CoverBeam {
  CVector w0;
  /// Set when the target direction lies (numerically) inside span{h_B}.
  bool degenerate = false;
};

/// Cover beam maximizing Re{h_T^H w0} with h_B^H w0 = 0 and ||w0||^2 <= p_remaining,
/// solved as a second-order cone program in LMI form.
CoverBeam zf_w0(const Scene& scene, double p_remaining);
CoverBeam zf_w0_closed_form(const Scene& scene, double p_remaining);

DesignResult maximize_mi_zf(const Scene& scene, double beta_sinr);

/// Bisection on Bob's SINR subject to an MI floor and the warden null.
DesignResult maximize_rate_perfect(const Scene& scene, double gamma_mi, const DesignOptions& options = {});

}  // namespace covertbf
