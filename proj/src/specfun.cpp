#include "wishart/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "kernels.hpp"

namespace wishart::specfun {
namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument(std::string(what) + ": argument must be finite");
  }
}

SpecfunResult from_log(double log_value, double rel_error) {
  const double v = std::exp(log_value);
  return {v, std::abs(v) * rel_error};
}

}  // namespace

double log_factorial(int k) {
  if (k < 0) throw std::invalid_argument("log_factorial: negative argument");
  return detail::log_factorial<double>(k);
}

SpecfunResult reg_lower_gamma(int a, double x) {
  if (a <= 0) throw std::invalid_argument("reg_lower_gamma: a must be a positive integer");
  require_finite(x, "reg_lower_gamma");
  if (x < 0) throw std::invalid_argument("reg_lower_gamma: x must be nonnegative");
  const auto pq = detail::gamma_log_pq<double>(a, x);
  return from_log(pq.log_p, pq.rel_error);
}

SpecfunResult reg_upper_gamma(int a, double x) {
  if (a <= 0) throw std::invalid_argument("reg_upper_gamma: a must be a positive integer");
  require_finite(x, "reg_upper_gamma");
  if (x < 0) throw std::invalid_argument("reg_upper_gamma: x must be nonnegative");
  const auto pq = detail::gamma_log_pq<double>(a, x);
  return from_log(pq.log_q, pq.rel_error);
}

SpecfunResult kummer_1f1(int a, int b, double x) {
  if (a < 1) throw std::invalid_argument("kummer_1f1: a must be a positive integer");
  if (b <= a) throw std::invalid_argument("kummer_1f1: requires b > a");
  require_finite(x, "kummer_1f1");
  if (x >= 0) {
    const auto r = detail::log_kummer_positive<double>(a, b, x);
    return from_log(r.log_value, r.rel_error);
  }
  const auto r = detail::log_kummer_positive<double>(b - a, b, -x);
  return from_log(x + r.log_value,
                  r.rel_error + detail::unit_roundoff<double>() * (2.0 + std::abs(x)));
}

SpecfunResult tricomi_u1(int b, double z) {
  if (b < 2) throw std::invalid_argument("tricomi_u1: b must be an integer >= 2");
  require_finite(z, "tricomi_u1");
  if (z <= 0) throw std::invalid_argument("tricomi_u1: z must be positive");
  const auto r = detail::log_tricomi_u1<double>(b, z);
  return from_log(r.log_value, r.rel_error);
}

}  // namespace wishart::specfun
