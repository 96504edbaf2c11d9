#include "covertbf/conic/solver.hpp"

#include <optional>

namespace covertbf::conic {

namespace {

// Facial reduction: a constraint Tr(M X) == 0 with M >= 0 and X >= 0 forces
// X = Q Y Q^H with Q spanning null(M). Such constraints leave the problem
// without a strictly feasible point, which interior-point methods handle
// poorly, so they are eliminated before solving.
struct Reduction {
  std::vector<CMatrix> range;      // per original block; zero columns if forced to 0
  std::vector<int> reduced_index;  // -1 when the block was eliminated
  ConicProblem problem;
};

bool is_psd_null_constraint(const AffineConstraint& c) {
  if (c.relation != Relation::kEqual || c.rhs != 0.0 || c.lhs.constant != 0.0) return false;
  if (c.lhs.traces.size() != 1 || !c.lhs.scalars.empty()) return false;
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(c.lhs.traces[0].coeff, Eigen::EigenvaluesOnly);
  const RVector ev = eig.eigenvalues();
  const double scale = std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1]));
  return scale > 0.0 && ev[0] >= -1e-12 * scale;
}

std::optional<Reduction> reduce(const ConicProblem& p) {
  const auto& blocks = p.blocks();
  std::vector<CMatrix> acc(blocks.size());
  std::vector<bool> dropped(p.affine_constraints().size(), false);
  bool any = false;
  for (std::size_t i = 0; i < p.affine_constraints().size(); ++i) {
    const auto& c = p.affine_constraints()[i];
    if (!is_psd_null_constraint(c)) continue;
    const int b = c.lhs.traces[0].block.index;
    const CMatrix m = c.lhs.traces[0].coeff / c.lhs.traces[0].coeff.norm();
    acc[b] = acc[b].size() ? CMatrix(acc[b] + m) : m;
    dropped[i] = true;
    any = true;
  }
  if (!any) return std::nullopt;

  Reduction r;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const int n = blocks[b].dim;
    if (!acc[b].size()) {
      r.range.push_back(CMatrix::Identity(n, n));
    } else {
      Eigen::SelfAdjointEigenSolver<CMatrix> eig(hermitian_part(acc[b]));
      const double top = eig.eigenvalues()(n - 1);
      int k = 0;
      while (k < n && eig.eigenvalues()(k) <= 1e-10 * top) ++k;
      r.range.push_back(eig.eigenvectors().leftCols(k));
    }
    if (r.range.back().cols() > 0) {
      r.reduced_index.push_back(r.problem.add_psd_block(blocks[b].name, static_cast<int>(r.range.back().cols())).index);
    } else {
      r.reduced_index.push_back(-1);
    }
  }
  for (const auto& s : p.scalars()) r.problem.add_scalar(s.name, s.domain);

  auto map_form = [&](const LinearForm& f) {
    LinearForm g;
    g.constant = f.constant;
    for (const auto& t : f.traces) {
      const int nb = r.reduced_index[t.block.index];
      if (nb < 0) continue;
      const CMatrix& q = r.range[t.block.index];
      g.add(BlockId{nb}, q.adjoint() * t.coeff * q);
    }
    for (const auto& s : f.scalars) g.add(s.scalar, s.coeff);
    return g;
  };
  r.problem.set_objective(p.sense(), map_form(p.objective()));
  for (std::size_t i = 0; i < p.affine_constraints().size(); ++i) {
    if (dropped[i]) continue;
    const auto& c = p.affine_constraints()[i];
    r.problem.add_affine(map_form(c.lhs), c.relation, c.rhs, c.label);
  }
  for (const auto& l : p.lmi_constraints()) {
    LmiConstraint m = l;
    m.blocks.clear();
    for (const auto& t : l.blocks) {
      const int nb = r.reduced_index[t.block.index];
      if (nb < 0) continue;
      m.blocks.push_back({BlockId{nb}, t.scale, r.range[t.block.index].adjoint() * t.map});
    }
    r.problem.add_lmi(std::move(m));
  }
  return r;
}

ConicSolution solve_direct(const ConicProblem& problem, const SolverTolerances& tol) {
  const StandardForm form = embed_complex(problem);
  const StandardSolution raw = solve_standard(form, tol);
  ConicSolution out;
  out.status = raw.status;
  out.iterations = raw.iterations;
  out.primal_residual = raw.primal_residual;
  out.dual_residual = raw.dual_residual;
  out.gap = raw.gap;
  const bool has_point = raw.status == SolveStatus::kOptimal || raw.status == SolveStatus::kUnbounded;
  back_map(problem, form, has_point ? raw.x : RVector::Zero(form.c.size()), out);
  return out;
}

}  // namespace

ConicSolution InteriorPointBackend::solve(const ConicProblem& problem, const SolverTolerances& tol) const {
  ConicSolution out;
  if (auto red = reduce(problem)) {
    const ConicSolution inner = solve_direct(red->problem, tol);
    out = inner;
    out.blocks.clear();
    for (std::size_t b = 0; b < problem.blocks().size(); ++b) {
      const auto& name = problem.blocks()[b].name;
      const int n = problem.blocks()[b].dim;
      if (red->reduced_index[b] < 0) {
        out.blocks[name] = CMatrix::Zero(n, n);
      } else {
        const CMatrix& q = red->range[b];
        out.blocks[name] = hermitian_part(q * inner.blocks.at(name) * q.adjoint());
      }
    }
  } else {
    out = solve_direct(problem, tol);
  }
  if (out.status == SolveStatus::kOptimal) {
    out.objective_value = evaluate(problem.objective(), out, problem);
    out.max_constraint_violation = max_violation(problem, out);
  }
  return out;
}

const ConicBackend& default_backend() {
  static const InteriorPointBackend backend;
  return backend;
}

ConicSolution solve(const ConicProblem& problem, const SolverTolerances& tol) {
  return default_backend().solve(problem, tol);
}

Feasibility check_feasibility(const ConicProblem& problem, const SolverTolerances& tol) {
  ConicProblem copy = problem;
  copy.set_objective(Sense::kMinimize, LinearForm{});
  const ConicSolution sol = solve(copy, tol);
  switch (sol.status) {
    case SolveStatus::kOptimal:
      return Feasibility::kFeasible;
    case SolveStatus::kInfeasible:
      return Feasibility::kInfeasible;
    default:
      throw SolverFailure(std::string("feasibility check ended with status ") + to_string(sol.status));
  }
}

RankProfile rank_profile(const CMatrix& w, double threshold) {
  if (w.rows() != w.cols()) throw InvalidInput("rank_profile: matrix must be square");
  RankProfile out;
  if (w.size() == 0) return out;
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(hermitian_part(w), Eigen::EigenvaluesOnly);
  const RVector ev = eig.eigenvalues().cwiseMax(0.0);
  const double trace = ev.sum();
  if (!(trace > 0.0)) return out;
  out.dominance = ev.maxCoeff() / trace;
  if (out.dominance >= 1.0 - threshold) {
    out.rank = 1;
    return out;
  }
  for (Eigen::Index i = 0; i < ev.size(); ++i) out.rank += ev[i] > threshold * trace ? 1 : 0;
  return out;
}

}  // namespace covertbf::conic
