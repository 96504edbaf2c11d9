#pragma once

#include <functional>
#include <optional>

#include "covertbf/beamformer.hpp"
#include "covertbf/rng.hpp"

namespace covertbf {

/// sqrt(lambda_max) times the principal eigenvector; zero for a zero matrix.
CVector principal_component(const CMatrix& w);

/// Draws from CN(0, cov) using the eigendecomposition of cov (negative
/// eigenvalues are clipped).
CVector sample_complex_gaussian(const CMatrix& cov, Rng& rng);

/// Problem-specific hooks for turning candidate beamformers into feasible ones.
struct PairExtraction {
  /// Returns a feasible pair built from the candidate's directions, or nullopt.
  std::function<std::optional<BeamformerPair>(const BeamformerPair&)> repair;
  /// Larger is better.
  std::function<double(const BeamformerPair&)> objective;
  /// Optional extra acceptance test applied to repaired randomized candidates.
  std::function<bool(const BeamformerPair&)> accept_randomized;
  /// Repair used for randomized candidates; defaults to `repair`.
  std::function<std::optional<BeamformerPair>(const BeamformerPair&)> repair_randomized;
};

struct ExtractionOutcome {
  BeamformerPair pair;
  int trials = 0;
  bool from_principal = false;
};

/// Rank-one extraction for a pair of lifted solutions. If both matrices pass
/// the rank-one test, the repaired principal components are returned. Otherwise
/// n_trials Gaussian candidates are drawn, repaired, and the best feasible one
/// (principal candidate included) wins. Throws ExtractionFailure when nothing
/// survives the repair.
ExtractionOutcome extract_rank1_pair(const CMatrix& w0, const CMatrix& w1, const PairExtraction& hooks, int n_trials,
                                     Rng& rng);

/// Single-matrix variant.
CVector extract_rank1(const CMatrix& w, const std::function<std::optional<CVector>(const CVector&)>& repair,
                      const std::function<double(const CVector&)>& objective, int n_trials, Rng& rng);

}  // namespace covertbf
