#pragma once

// Series oracle: integer partitions, Schur polynomials (Jacobi-Trudi),
// partition Pochhammer symbols and the hypergeometric function of matrix
// argument 1F1(a; b; x_1..x_m) = sum_k [a]_k / (d'_k [b]_k) s_k(x).
// Independent of the determinant engine; used to cross-check it.

#include <span>
#include <vector>

#include "wishart/model.hpp"

namespace wishart::schur {

/// Weakly decreasing nonnegative parts, padded with zeros to a fixed length.
struct Partition {
  std::vector<int> parts;

  int weight() const;
  /// Number of nonzero parts.
  int length() const;

  friend bool operator==(const Partition&, const Partition&) = default;
};

/// Throws std::invalid_argument unless parts are nonnegative and nonincreasing.
Partition make_partition(std::vector<int> parts);

/// Every partition with `length` slots, parts <= max_part (negative means
/// unbounded), weight <= max_weight, in lexicographic order of the padded
/// part vectors. Throws if length < 1; negative max_weight gives nothing.
std::vector<Partition> partitions(int max_weight, int max_part, int length);

/// Partitions of exactly `weight`, same conventions.
std::vector<Partition> partitions_of_weight(int weight, int max_part, int length);

/// s_k(x) by the Jacobi-Trudi determinant det[h_{k_i - i + j}] with
/// fraction-free elimination in 50-digit arithmetic, so integer inputs give
/// exact results. Returns 0 when k has more nonzero parts than x has entries.
double schur_poly(const Partition& k, std::span<const double> x);

/// [a]_k = prod_j (a - j + 1)^{(k_j)} (rising factorials). Throws
/// std::domain_error when a - j + 1 is a nonpositive integer and k_j > 0.
double pochhammer_partition(double a, const Partition& k, int m);

/// d'_k = [m]_k / f_m(k) with f_m(k) = prod_{i<j} (j - i + k_i - k_j) / (j - i).
/// Throws std::invalid_argument if k has more than m nonzero parts.
double d_prime(const Partition& k, int m);

struct SeriesValue {
  double value = 0.0;
  int truncation_weight = 0;
  double tail_bound = 0.0;
  /// False when the weight-shell sums were not yet decreasing at the last
  /// weight; value is returned but the tail is not bounded.
  bool tail_controlled = true;
};

/// Partial sum over weights <= max_weight. If tail_tol > 0 the sum stops
/// early once tail_bound <= tail_tol * |value|. When every x_j <= 0 the
/// equivalent all-positive series e^{sum x} 1F1(b - a; b; -x) is summed.
/// Requires b - j + 1 > 0 for j <= m.
SeriesValue hyp1f1_multivar(double a, double b, std::span<const double> x, int max_weight = 60,
                            double tail_tol = 0.0);

/// Pr(lambda_max <= lambda), row-correlated:
///   prod_k G(k)/G(n+k) prod_j (lambda s_j)^n 1F1(n; n+m; -lambda s).
/// Requires s.size() == dims.m.
SeriesValue cdf_max_schur(double lambda, Dimensions dims, const Spectrum& s,
                          int max_weight = 200, double tail_tol = 1e-13);

/// Pr(lambda_min >= lambda), row-correlated, as the finite sum
///   e^{-lambda sum s} sum_{k=0}^{m(n-m)} lambda^k sum_{|K|=k, K_1<=n-m} s_K(s) / d'_K.
double cdf_min_schur(double lambda, Dimensions dims, const Spectrum& s);

}  // namespace wishart::schur
