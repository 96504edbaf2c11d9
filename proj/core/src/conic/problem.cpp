#include "covertbf/conic/problem.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace covertbf::conic {

namespace {

CMatrix ingest_hermitian(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols()) throw InvalidInput(std::string(what) + ": matrix must be square");
  const double asym = (m - m.adjoint()).norm();
  if (asym > 1e-8 * std::max(1.0, m.norm())) {
    throw InvalidInput(std::string(what) + ": matrix must be Hermitian");
  }
  return hermitian_part(m);
}

void write_matrix(std::ostream& os, const CMatrix& m) {
  os << "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      os << (j ? ", " : "") << m(i, j).real();
      if (m(i, j).imag() != 0.0) os << (m(i, j).imag() < 0 ? "-" : "+") << std::abs(m(i, j).imag()) << "j";
    }
  }
  os << "]";
}

}  // namespace

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kUnbounded:
      return "unbounded";
    case SolveStatus::kMaxIterations:
      return "max_iterations";
    case SolveStatus::kNumericalFailure:
      return "numerical_failure";
  }
  return "unknown";
}

BlockId ConicProblem::add_psd_block(std::string name, int dim) {
  if (dim < 1) throw InvalidInput("add_psd_block: dimension must be >= 1");
  auto clash = [&](const auto& v) { return v.name == name; };
  if (std::any_of(blocks_.begin(), blocks_.end(), clash) || std::any_of(scalars_.begin(), scalars_.end(), clash)) {
    throw InvalidInput("add_psd_block: duplicate variable name '" + name + "'");
  }
  blocks_.push_back({std::move(name), dim});
  return BlockId{static_cast<int>(blocks_.size()) - 1};
}

ScalarId ConicProblem::add_scalar(std::string name, ScalarDomain domain) {
  auto clash = [&](const auto& v) { return v.name == name; };
  if (std::any_of(blocks_.begin(), blocks_.end(), clash) || std::any_of(scalars_.begin(), scalars_.end(), clash)) {
    throw InvalidInput("add_scalar: duplicate variable name '" + name + "'");
  }
  scalars_.push_back({std::move(name), domain});
  return ScalarId{static_cast<int>(scalars_.size()) - 1};
}

void ConicProblem::check_form(LinearForm& form) const {
  for (auto& t : form.traces) {
    if (t.block.index < 0 || t.block.index >= static_cast<int>(blocks_.size())) {
      throw InvalidInput("LinearForm: unknown block variable");
    }
    const int n = blocks_[t.block.index].dim;
    if (t.coeff.rows() != n || t.coeff.cols() != n) throw InvalidInput("LinearForm: trace coefficient has wrong size");
    t.coeff = ingest_hermitian(t.coeff, "LinearForm");
  }
  for (const auto& s : form.scalars) {
    if (s.scalar.index < 0 || s.scalar.index >= static_cast<int>(scalars_.size())) {
      throw InvalidInput("LinearForm: unknown scalar variable");
    }
  }
}

void ConicProblem::set_objective(Sense sense, LinearForm form) {
  check_form(form);
  sense_ = sense;
  objective_ = std::move(form);
}

void ConicProblem::add_affine(LinearForm lhs, Relation relation, double rhs, std::string label) {
  check_form(lhs);
  affine_.push_back({std::move(lhs), relation, rhs, std::move(label)});
}

void ConicProblem::add_lmi(LmiConstraint lmi) {
  if (lmi.dim < 1) throw InvalidInput("add_lmi: dimension must be >= 1");
  if (lmi.constant.size() == 0) lmi.constant = CMatrix::Zero(lmi.dim, lmi.dim);
  if (lmi.constant.rows() != lmi.dim) throw InvalidInput("add_lmi: constant has wrong size");
  lmi.constant = ingest_hermitian(lmi.constant, "add_lmi constant");
  for (const auto& t : lmi.blocks) {
    if (t.block.index < 0 || t.block.index >= static_cast<int>(blocks_.size())) {
      throw InvalidInput("add_lmi: unknown block variable");
    }
    if (t.map.rows() != blocks_[t.block.index].dim || t.map.cols() != lmi.dim) {
      throw InvalidInput("add_lmi: congruence map has wrong size");
    }
  }
  for (auto& t : lmi.scalars) {
    if (t.scalar.index < 0 || t.scalar.index >= static_cast<int>(scalars_.size())) {
      throw InvalidInput("add_lmi: unknown scalar variable");
    }
    if (t.coeff.rows() != lmi.dim) throw InvalidInput("add_lmi: scalar coefficient has wrong size");
    t.coeff = ingest_hermitian(t.coeff, "add_lmi coefficient");
  }
  lmis_.push_back(std::move(lmi));
}

BlockId ConicProblem::block(const std::string& name) const {
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i].name == name) return BlockId{static_cast<int>(i)};
  }
  throw InvalidInput("unknown block variable '" + name + "'");
}

ScalarId ConicProblem::scalar(const std::string& name) const {
  for (std::size_t i = 0; i < scalars_.size(); ++i) {
    if (scalars_[i].name == name) return ScalarId{static_cast<int>(i)};
  }
  throw InvalidInput("unknown scalar variable '" + name + "'");
}

std::string ConicProblem::dump() const {
  std::ostringstream os;
  os << std::setprecision(17);
  auto write_form = [&](const LinearForm& f) {
    for (const auto& t : f.traces) {
      os << "  trace " << blocks_[t.block.index].name << " ";
      write_matrix(os, t.coeff);
      os << "\n";
    }
    for (const auto& s : f.scalars) os << "  scalar " << scalars_[s.scalar.index].name << " " << s.coeff << "\n";
    os << "  constant " << f.constant << "\n";
  };
  os << "conic_problem v1\n";
  for (const auto& b : blocks_) os << "block " << b.name << " " << b.dim << " hermitian_psd\n";
  for (const auto& s : scalars_) {
    os << "scalar " << s.name << " " << (s.domain == ScalarDomain::kFree ? "free" : "nonneg") << "\n";
  }
  os << "objective " << (sense_ == Sense::kMinimize ? "minimize" : "maximize") << "\n";
  write_form(objective_);
  for (const auto& c : affine_) {
    const char* rel = c.relation == Relation::kEqual ? "==" : c.relation == Relation::kLessEqual ? "<=" : ">=";
    os << "affine " << (c.label.empty() ? "-" : c.label) << " " << rel << " " << c.rhs << "\n";
    write_form(c.lhs);
  }
  for (const auto& l : lmis_) {
    os << "lmi " << (l.label.empty() ? "-" : l.label) << " " << l.dim << "\n  constant ";
    write_matrix(os, l.constant);
    os << "\n";
    for (const auto& t : l.blocks) {
      os << "  congruence " << blocks_[t.block.index].name << " " << t.scale << " ";
      write_matrix(os, t.map);
      os << "\n";
    }
    for (const auto& t : l.scalars) {
      os << "  scalar " << scalars_[t.scalar.index].name << " ";
      write_matrix(os, t.coeff);
      os << "\n";
    }
  }
  os << "end\n";
  return os.str();
}

double evaluate(const LinearForm& form, const ConicSolution& values, const ConicProblem& problem) {
  double v = form.constant;
  for (const auto& t : form.traces) {
    const CMatrix& x = values.blocks.at(problem.blocks()[t.block.index].name);
    v += (t.coeff * x).trace().real();
  }
  for (const auto& s : form.scalars) v += s.coeff * values.scalars.at(problem.scalars()[s.scalar.index].name);
  return v;
}

double max_violation(const ConicProblem& problem, const ConicSolution& values) {
  double worst = 0.0;
  for (const auto& b : problem.blocks()) {
    const CMatrix& x = values.blocks.at(b.name);
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(hermitian_part(x), Eigen::EigenvaluesOnly);
    worst = std::max(worst, -eig.eigenvalues().minCoeff());
  }
  for (const auto& s : problem.scalars()) {
    if (s.domain == ScalarDomain::kNonnegative) worst = std::max(worst, -values.scalars.at(s.name));
  }
  for (const auto& c : problem.affine_constraints()) {
    const double lhs = evaluate(c.lhs, values, problem);
    switch (c.relation) {
      case Relation::kEqual:
        worst = std::max(worst, std::abs(lhs - c.rhs));
        break;
      case Relation::kLessEqual:
        worst = std::max(worst, lhs - c.rhs);
        break;
      case Relation::kGreaterEqual:
        worst = std::max(worst, c.rhs - lhs);
        break;
    }
  }
  for (const auto& l : problem.lmi_constraints()) {
    CMatrix f = l.constant;
    for (const auto& t : l.blocks) {
      const CMatrix& x = values.blocks.at(problem.blocks()[t.block.index].name);
      f += t.scale * (t.map.adjoint() * x * t.map);
    }
    for (const auto& t : l.scalars) f += values.scalars.at(problem.scalars()[t.scalar.index].name) * t.coeff;
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(hermitian_part(f), Eigen::EigenvaluesOnly);
    worst = std::max(worst, -eig.eigenvalues().minCoeff());
  }
  return worst;
}

}  // namespace covertbf::conic
