#include "wishart/logdet.hpp"

#include <cmath>
#include <stdexcept>

#include "logdet_kernel.hpp"

namespace wishart {
namespace {

LogDetResult logdet_impl(const Matrix<double>& m, const Matrix<double>* abs_errors) {
  if (!m.square()) throw std::invalid_argument("logdet: matrix must be square");
  if (abs_errors && (abs_errors->rows() != m.rows() || abs_errors->cols() != m.cols()))
    throw std::invalid_argument("logdet: error matrix shape mismatch");
  const double u = detail::unit_roundoff<double>();
  detail::EntryMatrix<double> e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      if (!std::isfinite(v)) throw std::invalid_argument("logdet: entries must be finite");
      if (v == 0) continue;
      double rel = u;
      if (abs_errors) rel = std::max(rel, std::abs((*abs_errors)(i, j) / v));
      e(i, j) = detail::log_entry(std::log(std::abs(v)), rel, v > 0 ? 1 : -1);
    }
  }
  const auto r = detail::logdet_entries<double>(e);
  return {r.det, r.rel_error, r.log_hadamard, r.growth};
}

}  // namespace

LogDetResult logdet(const Matrix<double>& m) { return logdet_impl(m, nullptr); }

LogDetResult logdet(const Matrix<double>& m, const Matrix<double>& abs_errors) {
  return logdet_impl(m, &abs_errors);
}

}  // namespace wishart
