#include "covertbf/randomization.hpp"

#include <cmath>
#include <limits>

#include "covertbf/conic/solver.hpp"

namespace covertbf {

CVector principal_component(const CMatrix& w) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(hermitian_part(w));
  const Eigen::Index top = w.rows() - 1;
  const double lam = eig.eigenvalues()(top);
  if (!(lam > 0.0)) return CVector::Zero(w.rows());
  return std::sqrt(lam) * eig.eigenvectors().col(top);
}

CVector sample_complex_gaussian(const CMatrix& cov, Rng& rng) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(hermitian_part(cov));
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  CVector z(cov.rows());
  for (auto& v : z) {
    const double re = g(rng);
    const double im = g(rng);
    v = cdouble(re, im);
  }
  const RVector sd = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * (sd.cast<cdouble>().asDiagonal() * z);
}

namespace {

bool rank_one_or_zero(const CMatrix& w) {
  const RankProfile r = conic::rank_profile(w);
  return r.rank <= 1;
}

}  // namespace

ExtractionOutcome extract_rank1_pair(const CMatrix& w0, const CMatrix& w1, const PairExtraction& hooks, int n_trials,
                                     Rng& rng) {
  if (!hooks.repair || !hooks.objective) throw InvalidInput("extract_rank1_pair: repair and objective are required");
  const BeamformerPair principal{principal_component(w0), principal_component(w1)};
  std::optional<BeamformerPair> best = hooks.repair(principal);
  ExtractionOutcome out;
  out.from_principal = best.has_value();
  if (best && rank_one_or_zero(w0) && rank_one_or_zero(w1)) {
    out.pair = *best;
    return out;
  }
  double best_value = best ? hooks.objective(*best) : -std::numeric_limits<double>::infinity();
  const auto& repair = hooks.repair_randomized ? hooks.repair_randomized : hooks.repair;
  for (int t = 0; t < n_trials; ++t) {
    ++out.trials;
    const BeamformerPair cand{sample_complex_gaussian(w0, rng), sample_complex_gaussian(w1, rng)};
    auto fixed = repair(cand);
    if (!fixed) continue;
    if (hooks.accept_randomized && !hooks.accept_randomized(*fixed)) continue;
    const double v = hooks.objective(*fixed);
    if (!best || v > best_value) {
      best = std::move(fixed);
      best_value = v;
      out.from_principal = false;
    }
  }
  if (!best) throw ExtractionFailure("no feasible rank-one candidate after " + std::to_string(n_trials) + " trials");
  out.pair = *best;
  return out;
}

CVector extract_rank1(const CMatrix& w, const std::function<std::optional<CVector>(const CVector&)>& repair,
                      const std::function<double(const CVector&)>& objective, int n_trials, Rng& rng) {
  PairExtraction hooks;
  hooks.repair = [&](const BeamformerPair& p) -> std::optional<BeamformerPair> {
    auto v = repair(p.comm);
    if (!v) return std::nullopt;
    return BeamformerPair{CVector::Zero(w.rows()), *v};
  };
  hooks.objective = [&](const BeamformerPair& p) { return objective(p.comm); };
  const CMatrix zero = CMatrix::Zero(w.rows(), w.cols());
  return extract_rank1_pair(zero, w, hooks, n_trials, rng).pair.comm;
}

}  // namespace covertbf
