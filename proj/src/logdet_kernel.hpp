#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "kernels.hpp"
#include "wishart/matrix.hpp"
#include "wishart/signed_log.hpp"

namespace wishart::detail {

/// Matrix entry held as sign and log magnitude, so entries like e^{800}
/// or s^{-40} can be equilibrated before anything is exponentiated.
template <class Real>
struct LogEntry {
  int sign = 0;
  Real log_abs = neg_infinity<Real>();
  double rel_error = 0.0;
};

template <class Real>
LogEntry<Real> log_entry(Real log_abs, double rel_error, int sign = 1) {
  return {sign, std::move(log_abs), rel_error};
}

template <class Real>
using EntryMatrix = Matrix<LogEntry<Real>>;

template <class Real>
struct DetOutcome {
  BasicSignedLog<Real> det;
  double rel_error = 0.0;
  double log_hadamard = 0.0;
  double growth = 1.0;
};

template <class Real>
DetOutcome<Real> logdet_entries(const EntryMatrix<Real>& a) {
  using std::abs;
  using std::exp;
  using std::log;
  using std::sqrt;
  if (!a.square()) throw std::invalid_argument("logdet: matrix must be square");
  const std::size_t n = a.rows();
  DetOutcome<Real> out;
  if (n == 0) {
    out.det = BasicSignedLog<Real>::one();
    return out;
  }
  const double ln2 = std::numbers::ln2;
  // scaling exponents must be formed in Real; a double product is not
  // separable by row and column once rounded
  const Real ln2_real = log(Real(2));
  const Real ninf = neg_infinity<Real>();

  std::vector<long> row_shift(n, 0), col_shift(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    Real mx = ninf;
    for (std::size_t j = 0; j < n; ++j)
      if (a(i, j).sign != 0) mx = std::max(mx, a(i, j).log_abs);
    if (mx == ninf) return out;  // zero row
    row_shift[i] = std::lround(static_cast<double>(mx) / ln2);
  }
  for (std::size_t j = 0; j < n; ++j) {
    Real mx = ninf;
    for (std::size_t i = 0; i < n; ++i)
      if (a(i, j).sign != 0) mx = std::max(mx, a(i, j).log_abs - Real(row_shift[i]) * ln2_real);
    if (mx == ninf) return out;  // zero column
    col_shift[j] = std::lround(static_cast<double>(mx) / ln2);
  }

  Matrix<Real> w(n, n, Real(0));
  double max_entry_err = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& e = a(i, j);
      max_entry_err = std::max(max_entry_err, e.rel_error);
      if (e.sign == 0) continue;
      w(i, j) = e.sign * exp(e.log_abs - Real(row_shift[i] + col_shift[j]) * ln2_real);
    }
  }

  long total_shift = 0;
  for (auto s : row_shift) total_shift += s;
  for (auto s : col_shift) total_shift += s;

  Real log_had = 0;
  Real amax = 0;
  for (std::size_t j = 0; j < n; ++j) {
    Real c2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      c2 += w(i, j) * w(i, j);
      amax = std::max(amax, abs(w(i, j)));
    }
    log_had += log(c2) / 2;
  }
  out.log_hadamard = static_cast<double>(log_had) + total_shift * ln2;

  int sign = 1;
  Real log_abs = 0;
  Real umax = amax;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (abs(w(i, k)) > abs(w(p, k))) p = i;
    if (w(p, k) == 0) {
      out.det = BasicSignedLog<Real>::zero();
      return out;
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(w(k, j), w(p, j));
      sign = -sign;
    }
    const Real pivot = w(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Real f = w(i, k) / pivot;
      if (f == 0) continue;
      for (std::size_t j = k + 1; j < n; ++j) {
        w(i, j) -= f * w(k, j);
        umax = std::max(umax, abs(w(i, j)));
      }
    }
    if (pivot < 0) sign = -sign;
    log_abs += log(abs(pivot));
  }
  log_abs += Real(total_shift) * ln2_real;
  out.det = BasicSignedLog<Real>::from_log(sign, log_abs);
  out.growth = static_cast<double>(umax / amax);

  const double amplification = std::exp(out.log_hadamard - static_cast<double>(log_abs));
  const double nd = static_cast<double>(n);
  out.rel_error = amplification *
                  (nd * max_entry_err + nd * (out.growth + 1.0) * unit_roundoff<Real>());
  return out;
}

}  // namespace wishart::detail
