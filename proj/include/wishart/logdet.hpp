#pragma once

#include "wishart/matrix.hpp"
#include "wishart/signed_log.hpp"

namespace wishart {

struct LogDetResult {
  SignedLogValue det;
  /// First-order relative error of det from entry errors, LU roundoff and
  /// the growth factor, amplified by the Hadamard-to-determinant ratio.
  double rel_error_estimate = 0.0;
  /// log of the Hadamard bound prod_j ||column_j||_2; log|det| <= this.
  double log_hadamard = 0.0;
  double growth_factor = 1.0;
};

/// Sign and log|det| of a square matrix. Rows and columns are equilibrated
/// by powers of two before LU with partial pivoting. An exactly singular
/// matrix yields sign 0.
LogDetResult logdet(const Matrix<double>& m);

/// As above with per-entry absolute error estimates (same shape as m).
LogDetResult logdet(const Matrix<double>& m, const Matrix<double>& abs_errors);

}  // namespace wishart
