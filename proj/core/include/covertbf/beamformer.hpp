#pragma once

#include <optional>

#include "covertbf/types.hpp"

namespace covertbf {

/// Transmit beamformers: `cover` carries the radar probing signal and
/// `comm` the covert data stream. Both signals have unit power.
struct BeamformerPair {
  CVector cover;
  CVector comm;

  double power() const { return cover.squaredNorm() + comm.squaredNorm(); }
};

struct RankProfile {
  int rank = 0;
  /// lambda_max / trace; 0 for the zero matrix.
  double dominance = 0.0;
};

struct DesignDiagnostics {
  int bisection_iterations = 0;
  int feasibility_solves = 0;
  int solver_iterations = 0;
  /// Last feasible bisection level and the initial upper bound.
  double level = 0.0;
  double level_upper_bound = 0.0;
  RankProfile cover_rank;
  RankProfile comm_rank;
  int randomization_trials = 0;
};

struct KlReport {
  double kl01 = 0.0;  // D(p0 || p1)
  double kl10 = 0.0;  // D(p1 || p0)
};

struct DesignResult {
  BeamformerPair pair;
  double mi_bits = 0.0;
  double rate_bits = 0.0;
  /// Evaluated at the scene's true warden channel.
  KlReport kl;
  DesignDiagnostics diagnostics;
};

}  // namespace covertbf
