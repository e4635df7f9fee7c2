#pragma once

#include <cmath>
#include <limits>
#include <utility>

namespace wishart {

/// Sign and natural-log magnitude. Carries every determinant and prefactor
/// so that products of dozens of factorials and powers never overflow.
/// Invariant: sign == 0 iff log_magnitude == -inf.
template <class Real>
struct BasicSignedLog {
  int sign = 0;
  Real log_magnitude = -std::numeric_limits<Real>::infinity();

  static BasicSignedLog zero() { return {}; }
  static BasicSignedLog one() { return {1, Real(0)}; }

  static BasicSignedLog from_log(int sign, Real log_magnitude) {
    if (sign == 0 || log_magnitude == -std::numeric_limits<Real>::infinity()) return {};
    return {sign > 0 ? 1 : -1, std::move(log_magnitude)};
  }

  static BasicSignedLog from_value(const Real& v) {
    using std::abs;
    using std::log;
    if (v == 0) return {};
    return {v > 0 ? 1 : -1, log(abs(v))};
  }

  bool is_zero() const { return sign == 0; }

  Real value() const {
    using std::exp;
    if (sign == 0) return Real(0);
    return sign * exp(log_magnitude);
  }

  BasicSignedLog operator-() const { return {-sign, log_magnitude}; }

  BasicSignedLog& operator*=(const BasicSignedLog& o) {
    if (sign == 0 || o.sign == 0) return *this = zero();
    sign *= o.sign;
    log_magnitude += o.log_magnitude;
    return *this;
  }

  BasicSignedLog& operator/=(const BasicSignedLog& o) {
    if (o.sign == 0) {
      // division by an exact zero has no meaningful signed-log result
      return *this = {0, std::numeric_limits<Real>::quiet_NaN()};
    }
    if (sign == 0) return *this;
    sign *= o.sign;
    log_magnitude -= o.log_magnitude;
    return *this;
  }

  friend BasicSignedLog operator*(BasicSignedLog a, const BasicSignedLog& b) { return a *= b; }
  friend BasicSignedLog operator/(BasicSignedLog a, const BasicSignedLog& b) { return a /= b; }

  friend BasicSignedLog operator+(const BasicSignedLog& a, const BasicSignedLog& b) {
    using std::exp;
    using std::log;
    if (a.sign == 0) return b;
    if (b.sign == 0) return a;
    const bool a_big = a.log_magnitude >= b.log_magnitude;
    const BasicSignedLog& hi = a_big ? a : b;
    const BasicSignedLog& lo = a_big ? b : a;
    const Real r = exp(lo.log_magnitude - hi.log_magnitude);
    if (hi.sign == lo.sign) return {hi.sign, hi.log_magnitude + log(1 + r)};
    if (r == 1) return zero();
    return {hi.sign, hi.log_magnitude + log(1 - r)};
  }

  friend BasicSignedLog operator-(const BasicSignedLog& a, const BasicSignedLog& b) {
    return a + (-b);
  }

  BasicSignedLog& operator+=(const BasicSignedLog& o) { return *this = *this + o; }
};

using SignedLogValue = BasicSignedLog<double>;

template <class To, class From>
BasicSignedLog<To> convert_signed_log(const BasicSignedLog<From>& x) {
  if (x.sign == 0) return {};
  return {x.sign, static_cast<To>(x.log_magnitude)};
}

}  // namespace wishart
