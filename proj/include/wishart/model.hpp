#pragma once

#include <complex>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "wishart/matrix.hpp"

namespace wishart {

/// Which extreme eigenvalue of Z^dagger Z a quantity refers to.
enum class Statistic { Max, Min };

/// Shape of the data matrix Z: n rows (samples), m columns (variables).
struct Dimensions {
  int n = 1;
  int m = 1;

  friend bool operator==(const Dimensions&, const Dimensions&) = default;
};

/// Throws std::invalid_argument unless n >= m >= 1.
Dimensions make_dimensions(int n, int m);

inline constexpr double kDefaultGapTol = 1e-8;
inline constexpr double kPerturbEpsilon = 1e-6;

/// Eigenvalues of an inverse covariance matrix (the s_j / r_j of the
/// formulas), strictly increasing and pairwise separated by at least
/// gap_tol relative to their mean. Only constructible through
/// validate_spectrum or spectrum_from_covariance.
class Spectrum {
 public:
  const std::vector<double>& values() const { return values_; }
  bool perturbed() const { return perturbed_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  /// Every value multiplied by c > 0 (separation is scale free).
  Spectrum scaled(double c) const;

  friend bool operator==(const Spectrum&, const Spectrum&) = default;

 private:
  friend Spectrum validate_spectrum(std::span<const double> raw, double gap_tol);
  friend Spectrum validate_spectrum(const Spectrum& s, double gap_tol);
  std::vector<double> values_;
  bool perturbed_ = false;
};

/// Sorts ascending and enforces the separation invariant. Degenerate input
/// gets one deterministic pass s_j <- s_j (1 + j * kPerturbEpsilon),
/// j = 1..len, and the perturbed flag is set. Throws on values <= 0,
/// nonfinite values, empty input, or degeneracy surviving the pass.
Spectrum validate_spectrum(std::span<const double> raw, double gap_tol = kDefaultGapTol);

/// Re-validation of an existing spectrum; keeps its perturbed flag.
Spectrum validate_spectrum(const Spectrum& s, double gap_tol = kDefaultGapTol);

struct RowCorrelated {
  Dimensions dims;
  Spectrum s;  // length m, eigenvalues of Sigma^{-1}
};

struct ColumnCorrelated {
  Dimensions dims;
  Spectrum s;  // length n, eigenvalues of Sigma_2^{-1}
};

struct DoublyCorrelated {
  Dimensions dims;
  Spectrum r;  // length m, eigenvalues of Sigma_1^{-1}
  Spectrum s;  // length n, eigenvalues of Sigma_2^{-1}
};

using ModelCase = std::variant<RowCorrelated, ColumnCorrelated, DoublyCorrelated>;

ModelCase make_row_case(int n, int m, Spectrum s);
ModelCase make_column_case(int n, int m, Spectrum s);
ModelCase make_doubly_case(int n, int m, Spectrum r, Spectrum s);

Dimensions dimensions_of(const ModelCase& c);
std::string kind_name(const ModelCase& c);
/// True if any spectrum of the case went through the degeneracy perturbation.
bool has_perturbed_spectrum(const ModelCase& c);

/// Hermitian positive-definite covariance matrix (Sigma, Sigma_1 or Sigma_2).
struct CovarianceMatrix {
  Matrix<std::complex<double>> entries;
};

/// Sorted reciprocals of eig(C), i.e. the spectrum of C^{-1}, validated.
/// Throws if C is not square, not Hermitian to 1e-12 relative, or not
/// positive definite.
Spectrum spectrum_from_covariance(const CovarianceMatrix& c, double gap_tol = kDefaultGapTol);

}  // namespace wishart
