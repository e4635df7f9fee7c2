#pragma once

// Scalar special functions used by the determinant entries: regularized
// incomplete gamma, Kummer 1F1 and Tricomi U(1,b,z), all restricted to
// integer parameters.

namespace wishart::specfun {

struct SpecfunResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
};

/// P(a, x) = gamma(a, x) / Gamma(a) for integer a >= 1 and x >= 0.
SpecfunResult reg_lower_gamma(int a, double x);

/// Q(a, x) = 1 - P(a, x), computed directly (no subtraction from 1).
SpecfunResult reg_upper_gamma(int a, double x);

/// 1F1(a; b; x) for integers 1 <= a < b. Negative arguments are evaluated
/// through the Kummer transform e^x 1F1(b-a; b; -x) so every summed term is
/// positive.
SpecfunResult kummer_1f1(int a, int b, double x);

/// Tricomi U(1, b, z) = int_0^inf e^{-zt} (1+t)^{b-2} dt for integer b >= 2
/// and z > 0, summed as sum_{i=0}^{b-2} (b-2)!/(b-2-i)! z^{-(i+1)}.
SpecfunResult tricomi_u1(int b, double z);

/// log((k)!) for k >= 0.
double log_factorial(int k);

}  // namespace wishart::specfun
