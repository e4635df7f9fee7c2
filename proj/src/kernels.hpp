#pragma once

// Precision-generic kernels shared by the public double-precision API and
// the extended-precision evaluation path. Everything here works for
// double and for detail::Extended.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <type_traits>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace wishart::detail {

/// 50 significant decimal digits; expression templates off so `auto` is safe.
using Extended = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<50>,
    boost::multiprecision::et_off>;

template <class Real>
inline Real neg_infinity() {
  return -std::numeric_limits<Real>::infinity();
}

template <class Real>
inline double unit_roundoff() {
  return static_cast<double>(std::numeric_limits<Real>::epsilon());
}

template <class Real>
Real log_factorial(int k) {
  if constexpr (std::is_same_v<Real, double>) {
    return std::lgamma(k + 1.0);
  } else {
    using std::log;
    constexpr int kTable = 1024;
    static const std::vector<Real> table = [] {
      std::vector<Real> t(kTable);
      t[0] = 0;
      for (int i = 1; i < kTable; ++i) t[i] = t[i - 1] + log(Real(i));
      return t;
    }();
    if (k < kTable) return table[k];
    Real s = table[kTable - 1];
    for (int i = kTable; i <= k; ++i) s += log(Real(i));
    return s;
  }
}

template <class Real>
Real log_sum_exp(std::span<const Real> xs) {
  using std::exp;
  using std::log;
  if (xs.empty()) return neg_infinity<Real>();
  Real mx = xs[0];
  for (const auto& x : xs) mx = std::max(mx, x);
  if (mx == neg_infinity<Real>()) return mx;
  Real s = 0;
  for (const auto& x : xs) s += exp(x - mx);
  return mx + log(s);
}

template <class Real>
struct GammaLogPQ {
  Real log_p;
  Real log_q;
  double rel_error;  // relative error of whichever of P, Q is evaluated
};

/// log P(a,x) and log Q(a,x) for integer a >= 1. Series for P when
/// x < a + 1, Lentz continued fraction for Q otherwise; the complementary
/// function is formed from the accurate one, which is then >= ~0.4.
template <class Real>
GammaLogPQ<Real> gamma_log_pq(int a, const Real& x) {
  using std::abs;
  using std::exp;
  using std::log;
  const Real eps = std::numeric_limits<Real>::epsilon();
  const double u = unit_roundoff<Real>();
  if (x == 0) return {neg_infinity<Real>(), Real(0), 0.0};
  const Real log_front = a * log(x) - x;
  const double front_err = u * (4.0 + std::abs(static_cast<double>(log_front)));
  constexpr int kMaxIter = 200000;

  if (x < a + 1) {
    Real sum = 1;
    Real term = 1;
    int k = 1;
    for (; k < kMaxIter; ++k) {
      term *= x / (a + k);
      sum += term;
      if (term < sum * eps) break;
    }
    const Real log_p = log_front - log_factorial<Real>(a) + log(sum);
    const Real p = exp(log_p);
    return {log_p, log(1 - p), front_err + u * k};
  }

  const Real tiny = std::numeric_limits<Real>::min() / eps;
  Real b = x + 1 - a;
  Real c = 1 / tiny;
  Real d = 1 / b;
  Real h = d;
  int i = 1;
  for (; i < kMaxIter; ++i) {
    const Real an = -Real(i) * (i - a);
    b += 2;
    d = an * d + b;
    if (abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (abs(c) < tiny) c = tiny;
    d = 1 / d;
    const Real del = d * c;
    h *= del;
    if (abs(del - 1) <= eps) break;
  }
  const Real log_q = log_front - log_factorial<Real>(a - 1) + log(h);
  const Real q = exp(log_q);
  return {log(1 - q), log_q, front_err + 2 * u * i};
}

template <class Real>
struct LogResult {
  Real log_value;
  double rel_error;
};

/// log 1F1(a; b; y) for integers 1 <= a < b and y >= 0 (all terms positive).
/// Large y uses the exact terminating expansion that holds for integer
/// parameters:
///   1F1 = G(b)/G(a) e^y y^{a-b} sum_{k<a} (b-a)_k (1-a)_k / k! y^{-k}
///       + G(b)/G(b-a) (-y)^{-a} sum_{k<b-a} (a)_k (a-b+1)_k / k! (-y)^{-k}
template <class Real>
LogResult<Real> log_kummer_positive(int a, int b, const Real& y) {
  using std::abs;
  using std::exp;
  using std::log;
  const double u = unit_roundoff<Real>();
  if (y == 0) return {Real(0), 0.0};

  if (y > 30 && y > 4.0 * a * b) {
    Real s1 = 1;
    Real t = 1;
    for (int k = 0; k + 1 < a; ++k) {
      t *= Real(b - a + k) * (1 - a + k) / ((k + 1) * y);
      s1 += t;
    }
    Real s2 = 1;
    t = 1;
    for (int k = 0; k + 1 < b - a; ++k) {
      t *= Real(a + k) * (a - b + 1 + k) / (-(k + 1) * y);
      s2 += t;
    }
    // second part relative to the leading prefactor G(b)/G(a) e^y y^{a-b}
    const Real log_ratio = log_factorial<Real>(a - 1) - log_factorial<Real>(b - a - 1) +
                           (b - 2 * a) * log(y) - y + log(abs(s2));
    const int ratio_sign = ((a % 2 == 0) ? 1 : -1) * (s2 < 0 ? -1 : 1);
    const Real total = s1 + ratio_sign * exp(log_ratio);
    const Real log_value = log_factorial<Real>(b - 1) - log_factorial<Real>(a - 1) + y +
                           (a - b) * log(y) + log(total);
    const double err = u * (4.0 * (a + b) + std::abs(static_cast<double>(log_value)));
    return {log_value, err};
  }

  const Real big = Real(1e250);
  const Real log_big = log(big);
  const Real eps = std::numeric_limits<Real>::epsilon();
  Real sum = 1;
  Real term = 1;
  Real log_scale = 0;
  int k = 0;
  for (;; ++k) {
    term *= Real(a + k) / (b + k) * y / (k + 1);
    sum += term;
    if (sum > big) {
      sum /= big;
      term /= big;
      log_scale += log_big;
    }
    if (k + 1 > y && term < eps * sum) break;
  }
  const Real log_value = log_scale + log(sum);
  return {log_value, u * (k + 4)};
}

/// log U(1, b, z) for integer b >= 2, z > 0 via the finite sum.
template <class Real>
LogResult<Real> log_tricomi_u1(int b, const Real& z) {
  using std::log;
  std::vector<Real> logs;
  logs.reserve(static_cast<std::size_t>(b - 1));
  const Real log_z = log(z);
  Real acc = -log_z;
  for (int i = 0; i <= b - 2; ++i) {
    logs.push_back(acc);
    if (i < b - 2) acc += log(Real(b - 2 - i)) - log_z;
  }
  const Real v = log_sum_exp<Real>(logs);
  return {v, unit_roundoff<Real>() * (b + 2 + std::abs(static_cast<double>(v)))};
}

}  // namespace wishart::detail
