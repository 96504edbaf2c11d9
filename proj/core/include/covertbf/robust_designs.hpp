#pragma once

#include <optional>
#include <utility>

#include "covertbf/beamformer.hpp"
#include "covertbf/conic/problem.hpp"
#include "covertbf/covert_metrics.hpp"
#include "covertbf/perfect_designs.hpp"
#include "covertbf/scene.hpp"

namespace covertbf {

enum class KlDirection {
  kP0P1,  // D(p0 || p1) <= 2 eps^2
  kP1P0,  // D(p1 || p0) <= 2 eps^2
};

struct RobustCovertSpec {
  double epsilon = 0.05;
  KlDirection direction = KlDirection::kP0P1;
  /// Absent: the estimate is trusted (nominal constraints at h_w_est).
  std::optional<EllipsoidError> error;
  CVector h_w_est;

  /// Allowed interval [lo, hi] for lambda1 / lambda0.
  std::pair<double, double> ratio_bounds() const;
  double budget() const { return 2.0 * epsilon * epsilon; }
  /// Throws InvalidInput on eps <= 0 or dimension mismatch.
  void validate() const;
};

/// Same spec with the uncertainty set removed.
RobustCovertSpec nominal(const RobustCovertSpec& spec);

/// KL divergence in the spec's direction as a function of lambda1 / lambda0.
double directional_kl(KlDirection direction, const LambdaPair& lp);

struct SLemmaCertificate {
  double eta1 = 0.0;
  double eta2 = 0.0;
};

struct RobustLmiHandles {
  conic::BlockId w0;
  conic::BlockId w1;
  conic::ScalarId eta1;
  conic::ScalarId eta2;
};

/// The two S-procedure LMIs of order N+1 guaranteeing lo <= lambda1/lambda0 <= hi
/// for every warden channel in the uncertainty ellipsoid.
std::pair<conic::LmiConstraint, conic::LmiConstraint> build_robust_lmis(const RobustCovertSpec& spec,
                                                                        const RobustLmiHandles& vars, double sigma2_w);

conic::ConicProblem robust_mi_feasibility_problem(const Scene& scene, const RobustCovertSpec& spec, double i_r,
                                                  double beta_sinr);
conic::ConicProblem robust_rate_feasibility_problem(const Scene& scene, const RobustCovertSpec& spec, double t,
                                                    double gamma_mi);

struct RobustDesignResult {
  DesignResult design;
  SLemmaCertificate certificate;
  /// Exact worst-case KL of the returned pair over the uncertainty set.
  double worst_case_kl = 0.0;
};

RobustDesignResult maximize_mi_robust(const Scene& scene, const RobustCovertSpec& spec, double beta_sinr,
                                      const DesignOptions& options = {});
RobustDesignResult maximize_rate_robust(const Scene& scene, const RobustCovertSpec& spec, double gamma_mi,
                                        const DesignOptions& options = {});

/// max (or global maximizer) of  v^H A v + 2 Re(b^H v)  over ||v||^2 <= radius2.
struct TrustRegionSolution {
  double value = 0.0;
  CVector v;
};
TrustRegionSolution trust_region_max(const CMatrix& a, const CVector& b, double radius2);

/// Supremum of lambda1/lambda0 over the uncertainty set, via Dinkelbach
/// iterations on trust-region subproblems. Returns (ratio, maximizing error).
std::pair<double, CVector> worst_case_ratio(const BeamformerPair& pair, const RobustCovertSpec& spec, double sigma2_w);

struct WorstCaseKl {
  double kl = 0.0;
  CVector delta;
};

/// Sampling lower bound on the worst-case KL: boundary and interior samples,
/// projected-gradient ascent from the best ones, and the trust-region
/// maximizer as an additional candidate. Deterministic; never decreases when
/// n_samples doubles.
WorstCaseKl worst_case_kl(const BeamformerPair& pair, const RobustCovertSpec& spec, double sigma2_w, int n_samples);

}  // namespace covertbf
