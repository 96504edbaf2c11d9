#pragma once

#include <vector>

#include "covertbf/conic/problem.hpp"

namespace covertbf::conic {

/// Product cone: a nonnegative orthant followed by real symmetric PSD blocks.
/// Cone vectors store each PSD block as a full column-major matrix, so the
/// Euclidean inner product equals the trace inner product.
struct ConeDims {
  int nonneg = 0;
  std::vector<int> psd;

  int size() const;
  /// Barrier degree: nonneg + sum of PSD orders.
  int degree() const;
};

/// Real problem  min c'x  s.t.  A x = b,  G x + s = h,  s in K.
struct StandardForm {
  RVector c;
  RMatrix A;
  RVector b;
  RMatrix G;
  RVector h;
  ConeDims cones;

  /// Original objective = objective_sign * c'x + objective_constant.
  double objective_sign = 1.0;
  double objective_constant = 0.0;
  std::vector<int> block_offset;
  std::vector<int> block_dim;
  std::vector<int> scalar_offset;
};

/// Real symmetric embedding [[Re H, -Im H], [Im H, Re H]] of a Hermitian H.
RMatrix embed_hermitian(const CMatrix& h);
/// Inverse of embed_hermitian (averages the redundant copies).
CMatrix unembed_hermitian(const RMatrix& s);

/// Number of real parameters of an n x n Hermitian matrix (n^2).
inline int hermitian_param_count(int n) { return n * n; }
/// Parameter vector -> Hermitian matrix (diagonal, then Re/Im of the strict upper triangle).
CMatrix hermitian_from_params(const double* x, int n);
RVector params_from_hermitian(const CMatrix& h);

/// Lowers a complex conic problem to the real standard form. Each Hermitian
/// block or LMI of order n becomes a real PSD cone of order 2n.
StandardForm embed_complex(const ConicProblem& problem);

/// Maps a real solution vector back to named Hermitian blocks and scalars.
void back_map(const ConicProblem& problem, const StandardForm& form, const RVector& x, ConicSolution& out);

}  // namespace covertbf::conic
