#pragma once

#include <map>
#include <string>
#include <vector>

#include "covertbf/types.hpp"

namespace covertbf::conic {

struct BlockId {
  int index = -1;
  friend bool operator==(BlockId, BlockId) = default;
};

struct ScalarId {
  int index = -1;
  friend bool operator==(ScalarId, ScalarId) = default;
};

enum class ScalarDomain { kNonnegative, kFree };
enum class Sense { kMinimize, kMaximize };
enum class Relation { kLessEqual, kGreaterEqual, kEqual };

/// Tr(coeff * X) for a Hermitian block variable X.
struct TraceTerm {
  BlockId block;
  CMatrix coeff;
};

struct ScalarTerm {
  ScalarId scalar;
  double coeff = 0.0;
};

/// Real-valued affine functional of the variables.
struct LinearForm {
  std::vector<TraceTerm> traces;
  std::vector<ScalarTerm> scalars;
  double constant = 0.0;

  LinearForm& add(BlockId b, CMatrix coeff) {
    traces.push_back({b, std::move(coeff)});
    return *this;
  }
  LinearForm& add(ScalarId s, double coeff) {
    scalars.push_back({s, coeff});
    return *this;
  }
};

struct AffineConstraint {
  LinearForm lhs;
  Relation relation = Relation::kGreaterEqual;
  double rhs = 0.0;
  std::string label;
};

/// scale * map^H X map for a block variable X of dimension map.rows().
struct CongruenceTerm {
  BlockId block;
  double scale = 1.0;
  CMatrix map;
};

struct LmiScalarTerm {
  ScalarId scalar;
  CMatrix coeff;
};

/// constant + sum of congruence terms + sum_i s_i coeff_i  >=  0 (PSD).
struct LmiConstraint {
  int dim = 0;
  CMatrix constant;
  std::vector<CongruenceTerm> blocks;
  std::vector<LmiScalarTerm> scalars;
  std::string label;
};

struct BlockVar {
  std::string name;
  int dim = 0;
};

struct ScalarVar {
  std::string name;
  ScalarDomain domain = ScalarDomain::kNonnegative;
};

/// A small dense conic program over Hermitian PSD matrix variables and real
/// scalars. Matrices handed in are symmetrized; grossly non-Hermitian input
/// is rejected.
class ConicProblem {
 public:
  BlockId add_psd_block(std::string name, int dim);
  ScalarId add_scalar(std::string name, ScalarDomain domain);

  void set_objective(Sense sense, LinearForm form);
  void add_affine(LinearForm lhs, Relation relation, double rhs, std::string label = {});
  void add_lmi(LmiConstraint lmi);

  const std::vector<BlockVar>& blocks() const { return blocks_; }
  const std::vector<ScalarVar>& scalars() const { return scalars_; }
  Sense sense() const { return sense_; }
  const LinearForm& objective() const { return objective_; }
  const std::vector<AffineConstraint>& affine_constraints() const { return affine_; }
  const std::vector<LmiConstraint>& lmi_constraints() const { return lmis_; }

  BlockId block(const std::string& name) const;
  ScalarId scalar(const std::string& name) const;

  /// Human-readable dump of variables, objective and constraints.
  std::string dump() const;

 private:
  void check_form(LinearForm& form) const;

  std::vector<BlockVar> blocks_;
  std::vector<ScalarVar> scalars_;
  Sense sense_ = Sense::kMinimize;
  LinearForm objective_;
  std::vector<AffineConstraint> affine_;
  std::vector<LmiConstraint> lmis_;
};

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kMaxIterations, kNumericalFailure };

const char* to_string(SolveStatus status);

struct ConicSolution {
  SolveStatus status = SolveStatus::kNumericalFailure;
  std::map<std::string, CMatrix> blocks;
  std::map<std::string, double> scalars;
  double objective_value = 0.0;
  double max_constraint_violation = 0.0;
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;

  bool optimal() const { return status == SolveStatus::kOptimal; }
};

/// Evaluates a LinearForm at the given variable values.
double evaluate(const LinearForm& form, const ConicSolution& values, const ConicProblem& problem);

/// Largest violation of any constraint (affine residual, negative eigenvalue
/// of an LMI or block), recomputed in the complex domain.
double max_violation(const ConicProblem& problem, const ConicSolution& values);

}  // namespace covertbf::conic
