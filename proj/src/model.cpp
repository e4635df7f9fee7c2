#include "wishart/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "wishart/montecarlo.hpp"

namespace wishart {
namespace {

bool separated(const std::vector<double>& v, double gap_tol) {
  if (v.size() < 2) return true;
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!((v[i] - v[i - 1]) / mean >= gap_tol)) return false;
  return true;
}

void require_length(const Spectrum& s, int expected, const char* what) {
  if (static_cast<int>(s.size()) != expected)
    throw std::invalid_argument(std::string(what) + " spectrum must have length " +
                                std::to_string(expected) + ", got " +
                                std::to_string(s.size()));
}

}  // namespace

Dimensions make_dimensions(int n, int m) {
  if (m < 1 || n < m)
    throw std::invalid_argument("dimensions must satisfy n >= m >= 1 (got n=" +
                                std::to_string(n) + ", m=" + std::to_string(m) + ")");
  return {n, m};
}

Spectrum Spectrum::scaled(double c) const {
  if (!(c > 0) || !std::isfinite(c)) throw std::invalid_argument("Spectrum::scaled: c must be positive");
  Spectrum out = *this;
  for (auto& v : out.values_) v *= c;
  return out;
}

Spectrum validate_spectrum(std::span<const double> raw, double gap_tol) {
  if (raw.empty()) throw std::invalid_argument("spectrum must be nonempty");
  for (double v : raw) {
    if (!std::isfinite(v)) throw std::invalid_argument("spectrum values must be finite");
    if (v <= 0) throw std::invalid_argument("spectrum values must be positive");
  }
  Spectrum s;
  s.values_.assign(raw.begin(), raw.end());
  std::sort(s.values_.begin(), s.values_.end());
  if (separated(s.values_, gap_tol)) return s;

  for (std::size_t j = 0; j < s.values_.size(); ++j)
    s.values_[j] *= 1.0 + static_cast<double>(j + 1) * kPerturbEpsilon;
  s.perturbed_ = true;
  if (!separated(s.values_, gap_tol))
    throw std::invalid_argument("spectrum remains degenerate after perturbation");
  return s;
}

Spectrum validate_spectrum(const Spectrum& s, double gap_tol) {
  Spectrum out = validate_spectrum(std::span<const double>(s.values_), gap_tol);
  out.perturbed_ = out.perturbed_ || s.perturbed_;
  return out;
}

ModelCase make_row_case(int n, int m, Spectrum s) {
  const auto d = make_dimensions(n, m);
  require_length(s, m, "row-correlated");
  return RowCorrelated{d, std::move(s)};
}

ModelCase make_column_case(int n, int m, Spectrum s) {
  const auto d = make_dimensions(n, m);
  require_length(s, n, "column-correlated");
  return ColumnCorrelated{d, std::move(s)};
}

ModelCase make_doubly_case(int n, int m, Spectrum r, Spectrum s) {
  const auto d = make_dimensions(n, m);
  require_length(r, m, "doubly-correlated r");
  require_length(s, n, "doubly-correlated s");
  return DoublyCorrelated{d, std::move(r), std::move(s)};
}

Dimensions dimensions_of(const ModelCase& c) {
  return std::visit([](const auto& k) { return k.dims; }, c);
}

std::string kind_name(const ModelCase& c) {
  switch (c.index()) {
    case 0: return "row";
    case 1: return "column";
    default: return "double";
  }
}

bool has_perturbed_spectrum(const ModelCase& c) {
  return std::visit(
      [](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, DoublyCorrelated>) {
          return k.r.perturbed() || k.s.perturbed();
        } else {
          return k.s.perturbed();
        }
      },
      c);
}

Spectrum spectrum_from_covariance(const CovarianceMatrix& c, double gap_tol) {
  const auto& e = c.entries;
  if (!e.square() || e.rows() == 0)
    throw std::invalid_argument("covariance matrix must be square and nonempty");
  double scale = 0;
  for (std::size_t i = 0; i < e.rows(); ++i)
    for (std::size_t j = 0; j < e.cols(); ++j) scale = std::max(scale, std::abs(e(i, j)));
  for (std::size_t i = 0; i < e.rows(); ++i)
    for (std::size_t j = i; j < e.cols(); ++j)
      if (std::abs(e(i, j) - std::conj(e(j, i))) > 1e-12 * scale)
        throw std::invalid_argument("covariance matrix is not Hermitian");

  const auto eig = mc::hermitian_eigs(e);
  std::vector<double> inv;
  inv.reserve(eig.size());
  for (double v : eig) {
    if (!(v > 0)) throw std::invalid_argument("covariance matrix is not positive definite");
    inv.push_back(1.0 / v);
  }
  return validate_spectrum(inv, gap_tol);
}

}  // namespace wishart
