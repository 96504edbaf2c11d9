#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace covertbf {

using cdouble = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

/// Raised when inputs violate an operation's preconditions.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a design problem has no feasible beamformer (e.g. the SINR
/// floor cannot be met within the power budget, or the zero-forcing null
/// space is empty).
class DesignInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when Gaussian randomization finds no feasible rank-one candidate.
class ExtractionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the conic solver cannot produce a verdict.
class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

}  // namespace covertbf
