#include "wishart/detform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <type_traits>
#include <vector>

#include "kernels.hpp"
#include "logdet_kernel.hpp"

namespace wishart::detform {
namespace {

using detail::EntryMatrix;
using detail::Extended;
using detail::log_entry;
using detail::log_factorial;
using detail::unit_roundoff;

template <class Real>
using SL = BasicSignedLog<Real>;

enum class Quantity { Probability, Density };

int parity_sign(long k) { return k % 2 == 0 ? 1 : -1; }

template <class Real>
std::vector<Real> reals(const Spectrum& s) {
  std::vector<Real> out;
  out.reserve(s.size());
  for (double v : s.values()) out.emplace_back(v);
  return out;
}

// prod_{j<k} (x_k - x_j)
template <class Real>
SL<Real> vandermonde(const std::vector<Real>& x) {
  auto v = SL<Real>::one();
  for (std::size_t k = 0; k < x.size(); ++k)
    for (std::size_t j = 0; j < k; ++j) v *= SL<Real>::from_value(x[k] - x[j]);
  return v;
}

template <class Real>
Real sum_log(const std::vector<Real>& x) {
  using std::log;
  Real s = 0;
  for (const auto& v : x) s += log(v);
  return s;
}

template <class Real>
Real sum(const std::vector<Real>& x) {
  Real s = 0;
  for (const auto& v : x) s += v;
  return s;
}

template <class Real>
struct Term {
  SL<Real> coef;
  EntryMatrix<Real> m;
};

template <class Real>
struct DetSum {
  SL<Real> prefactor;
  double prefactor_rel_error = 0.0;
  std::vector<Term<Real>> terms;
};

struct Combined {
  double value = 0.0;
  double abs_error = 0.0;
  double cancellation_digits = 0.0;
};

template <class Real>
Combined combine(const DetSum<Real>& ds) {
  const double ninf = -std::numeric_limits<double>::infinity();
  const double u = unit_roundoff<Real>();
  SL<Real> total;
  std::vector<double> err_logs;
  double max_scale = ninf;
  for (const auto& t : ds.terms) {
    const SL<Real> w = ds.prefactor * t.coef;
    if (w.is_zero()) continue;
    const auto d = detail::logdet_entries(t.m);
    if (d.det.is_zero()) continue;
    max_scale = std::max(max_scale, static_cast<double>(w.log_magnitude) + d.log_hadamard);
    const SL<Real> c = w * d.det;
    total += c;
    err_logs.push_back(static_cast<double>(c.log_magnitude) +
                       std::log(std::max(d.rel_error, u)));
  }
  Combined out;
  if (max_scale == ninf) return out;
  out.value = static_cast<double>(total.value());
  out.abs_error = std::exp(detail::log_sum_exp<double>(err_logs)) +
                  std::abs(out.value) * (ds.prefactor_rel_error + u * ds.terms.size());
  if (total.is_zero()) {
    out.cancellation_digits = -std::log10(u);
  } else {
    out.cancellation_digits = std::max(
        0.0, (max_scale - static_cast<double>(total.log_magnitude)) / std::numbers::ln10);
  }
  return out;
}

template <class Real>
Combined closed_form(const SL<Real>& v, double rel_error) {
  return {static_cast<double>(v.value()), std::abs(static_cast<double>(v.value())) * rel_error,
          0.0};
}

template <class Real>
double extra_digits() {
  return std::log10(unit_roundoff<double>() / unit_roundoff<Real>());
}

EvalReport finish(const Combined& c, Quantity q, const ModelCase& mc, double threshold,
                  Precision used) {
  if (!std::isfinite(c.value)) throw NumericalError("evaluation produced a nonfinite value");
  EvalReport r;
  r.value = c.value;
  r.abs_error_estimate = std::isfinite(c.abs_error) ? c.abs_error
                                                    : std::numeric_limits<double>::infinity();
  r.cancellation_digits = c.cancellation_digits;
  r.precision_used = used;
  if (c.cancellation_digits > threshold) {
    r.reliable = false;
    r.warnings.push_back({"cancellation", "lost about " +
                                              std::to_string(static_cast<int>(
                                                  std::ceil(c.cancellation_digits))) +
                                              " digits to cancellation"});
  }
  const double hi = q == Quantity::Probability ? 1.0 : std::numeric_limits<double>::infinity();
  const double clamped = std::clamp(r.value, 0.0, hi);
  if (clamped != r.value) {
    const double residual = std::abs(clamped - r.value);
    if (residual > 1e-8) {
      r.warnings.push_back({"clamped", "raw value " + std::to_string(r.value) +
                                           " clamped into range"});
    }
    r.value = clamped;
  }
  if (has_perturbed_spectrum(mc))
    r.warnings.push_back({"perturbed_spectrum", "degenerate spectrum was perturbed"});
  return r;
}

template <class Build>
EvalReport evaluate(const ModelCase& mc, Quantity q, const EvalOptions& opts, Build&& build) {
  auto run = [&]<class Real>(std::type_identity<Real> tag, Precision used) {
    const Combined c = build(tag);
    return finish(c, q, mc, opts.cancellation_threshold + extra_digits<Real>(), used);
  };
  switch (opts.precision) {
    case Precision::Double:
      return run(std::type_identity<double>{}, Precision::Double);
    case Precision::Extended:
      return run(std::type_identity<Extended>{}, Precision::Extended);
    case Precision::Auto: {
      EvalReport r = run(std::type_identity<double>{}, Precision::Double);
      if (r.cancellation_digits <= opts.cancellation_threshold) return r;
      EvalReport e = run(std::type_identity<Extended>{}, Precision::Extended);
      e.warnings.push_back({"extended_rerun", "double precision lost " +
                                                  std::to_string(static_cast<int>(
                                                      std::ceil(r.cancellation_digits))) +
                                                  " digits; rerun in extended precision"});
      return e;
    }
  }
  throw std::invalid_argument("unknown precision");
}

void require_positive(double x, const char* what) {
  if (!(x > 0) || !std::isfinite(x))
    throw std::invalid_argument(std::string(what) + " must be positive and finite");
}

// log of int_0^x t^{a-1} e^{-s t} dt = G(a) P(a, s x) / s^a
template <class Real>
detail::LogEntry<Real> lower_entry(int a, const Real& s, const Real& x) {
  using std::log;
  const auto pq = detail::gamma_log_pq<Real>(a, s * x);
  return log_entry<Real>(log_factorial<Real>(a - 1) + pq.log_p - a * log(s), pq.rel_error);
}

// log of int_x^inf t^{a-1} e^{-s t} dt = G(a) Q(a, s x) / s^a
template <class Real>
detail::LogEntry<Real> upper_entry(int a, const Real& s, const Real& x) {
  using std::log;
  const auto pq = detail::gamma_log_pq<Real>(a, s * x);
  return log_entry<Real>(log_factorial<Real>(a - 1) + pq.log_q - a * log(s), pq.rel_error);
}

template <class Real>
Real log1mexp(const Real& d) {
  using std::exp;
  using std::log;
  if constexpr (std::is_same_v<Real, double>) {
    return std::log(-std::expm1(d));
  } else {
    return log(1 - exp(d));
  }
}

// ---- row-correlated ------------------------------------------------------

// (-1)^{m(m-1)/2} prod s^n / prod (a_k - 1)! / Vandermonde(s)
template <class Real>
SL<Real> row_prefactor(int n, int m, const std::vector<Real>& s) {
  Real lg = n * sum_log(s);
  for (int k = 1; k <= m; ++k) lg -= log_factorial<Real>(n - m + k - 1);
  return SL<Real>::from_log(parity_sign(long(m) * (m - 1) / 2), lg) / vandermonde(s);
}

template <class Real>
EntryMatrix<Real> row_lower_matrix(int n, int m, const std::vector<Real>& s, const Real& lam) {
  EntryMatrix<Real> e(m, m);
  for (int j = 0; j < m; ++j)
    for (int k = 1; k <= m; ++k) e(j, k - 1) = lower_entry<Real>(n - m + k, s[j], lam);
  return e;
}

template <class Real>
DetSum<Real> row_max_sum(const RowCorrelated& c, double lambda, bool density) {
  using std::log;
  const int n = c.dims.n, m = c.dims.m;
  const auto s = reals<Real>(c.s);
  const Real lam(lambda);
  DetSum<Real> ds;
  ds.prefactor = row_prefactor<Real>(n, m, s);
  const auto base = row_lower_matrix<Real>(n, m, s, lam);
  if (!density) {
    ds.terms.push_back({SL<Real>::one(), base});
    return ds;
  }
  for (int col = 0; col < m; ++col) {
    auto e = base;
    const int a = n - m + col + 1;
    for (int j = 0; j < m; ++j)
      e(j, col) = log_entry<Real>((a - 1) * log(lam) - s[j] * lam,
                                  unit_roundoff<Real>() * (2 + a));
    ds.terms.push_back({SL<Real>::one(), std::move(e)});
  }
  return ds;
}

// e^{lambda s_j} int_lambda^inf t^{a-1} e^{-s_j t} dt as a finite sum
template <class Real>
EntryMatrix<Real> row_upper_scaled(int n, int m, const std::vector<Real>& s, const Real& lam) {
  using std::log;
  EntryMatrix<Real> e(m, m);
  const Real log_lam = log(lam);
  std::vector<Real> logs;
  for (int j = 0; j < m; ++j) {
    const Real log_s = log(s[j]);
    for (int k = 1; k <= m; ++k) {
      const int a = n - m + k;
      logs.clear();
      for (int i = 0; i < a; ++i)
        logs.push_back(log_factorial<Real>(a - 1) - log_factorial<Real>(a - 1 - i) +
                       (a - 1 - i) * log_lam - (i + 1) * log_s);
      e(j, k - 1) = log_entry<Real>(detail::log_sum_exp<Real>(logs),
                                    unit_roundoff<Real>() * (a + 4));
    }
  }
  return e;
}

template <class Real>
Combined row_min(const RowCorrelated& c, double lambda, bool density) {
  using std::log;
  const int n = c.dims.n, m = c.dims.m;
  const auto s = reals<Real>(c.s);
  const Real lam(lambda);
  const Real ls = lam * sum(s);
  const double u = unit_roundoff<Real>();
  if (m == n) {
    auto v = SL<Real>::from_log(1, -ls);
    if (density) v *= SL<Real>::from_value(sum(s));
    return closed_form(v, u * (4 + static_cast<double>(ls)));
  }
  DetSum<Real> ds;
  ds.prefactor = row_prefactor<Real>(n, m, s) * SL<Real>::from_log(1, -ls);
  ds.prefactor_rel_error = u * static_cast<double>(ls);
  const auto base = row_upper_scaled<Real>(n, m, s, lam);
  if (!density) {
    ds.terms.push_back({SL<Real>::one(), base});
    return combine(ds);
  }
  for (int col = 0; col < m; ++col) {
    auto e = base;
    const int a = n - m + col + 1;
    for (int j = 0; j < m; ++j) e(j, col) = log_entry<Real>((a - 1) * log(lam), u * a);
    ds.terms.push_back({SL<Real>::one(), std::move(e)});
  }
  return combine(ds);
}

template <class Real>
Combined row_min_tricomi(const RowCorrelated& c, double lambda) {
  using std::log;
  const int n = c.dims.n, m = c.dims.m;
  const auto s = reals<Real>(c.s);
  const Real lam(lambda);
  Real lg = -lam * sum(s) - Real(long(m) * (m - 1) / 2) * log(lam);
  for (int k = 1; k <= m; ++k) lg += n * log(lam * s[k - 1]) - log_factorial<Real>(n - m + k - 1);
  DetSum<Real> ds;
  ds.prefactor = SL<Real>::from_log(parity_sign(long(m) * (m - 1) / 2), lg) / vandermonde(s);
  ds.prefactor_rel_error = unit_roundoff<Real>() * std::abs(static_cast<double>(lg));
  EntryMatrix<Real> e(m, m);
  for (int j = 0; j < m; ++j)
    for (int k = 1; k <= m; ++k) {
      const auto u1 = detail::log_tricomi_u1<Real>(n - m + k + 1, lam * s[j]);
      e(j, k - 1) = log_entry<Real>(u1.log_value, u1.rel_error);
    }
  ds.terms.push_back({SL<Real>::one(), std::move(e)});
  return combine(ds);
}

template <class Real>
EntryMatrix<Real> row_band_matrix(int n, int m, const std::vector<Real>& s, double a,
                                  double b) {
  using std::exp;
  using std::log;
  EntryMatrix<Real> e(m, m);
  for (int j = 0; j < m; ++j)
    for (int k = 1; k <= m; ++k) {
      const int ap = n - m + k;
      const auto pa = detail::gamma_log_pq<Real>(ap, s[j] * Real(a));
      detail::GammaLogPQ<Real> pb{Real(0), detail::neg_infinity<Real>(), 0.0};
      if (std::isfinite(b)) pb = detail::gamma_log_pq<Real>(ap, s[j] * Real(b));
      Real log_diff;
      double err;
      if (pa.log_p < log(Real(0.5))) {
        // P(b) - P(a)
        log_diff = pb.log_p + log1mexp<Real>(pa.log_p - pb.log_p);
        err = (pb.rel_error * static_cast<double>(exp(pb.log_p - log_diff)) +
               pa.rel_error * static_cast<double>(exp(pa.log_p - log_diff)));
      } else {
        // Q(a) - Q(b)
        log_diff = pa.log_q + log1mexp<Real>(pb.log_q - pa.log_q);
        err = (pa.rel_error * static_cast<double>(exp(pa.log_q - log_diff)) +
               pb.rel_error * static_cast<double>(exp(pb.log_q - log_diff)));
      }
      if (!std::isfinite(static_cast<double>(log_diff))) {
        e(j, k - 1) = {};
        continue;
      }
      e(j, k - 1) =
          log_entry<Real>(log_factorial<Real>(ap - 1) - ap * log(s[j]) + log_diff, err);
    }
  return e;
}

template <class Real>
Combined row_gap(const RowCorrelated& c, double a, double b) {
  const int n = c.dims.n, m = c.dims.m;
  const auto s = reals<Real>(c.s);
  DetSum<Real> ds;
  ds.prefactor = row_prefactor<Real>(n, m, s);
  ds.terms.push_back({SL<Real>::one(), row_band_matrix<Real>(n, m, s, a, b)});
  return combine(ds);
}

template <class Real>
Combined row_joint(const RowCorrelated& c, double a, double b) {
  using std::log;
  const int n = c.dims.n, m = c.dims.m;
  const auto s = reals<Real>(c.s);
  DetSum<Real> ds;
  ds.prefactor = row_prefactor<Real>(n, m, s);
  const auto base = row_band_matrix<Real>(n, m, s, a, b);
  const Real ra(a), rb(b);
  const double u = unit_roundoff<Real>();
  for (int c1 = 0; c1 < m; ++c1)
    for (int c2 = 0; c2 < m; ++c2) {
      if (c1 == c2) continue;
      auto e = base;
      const int a1 = n - m + c1 + 1, a2 = n - m + c2 + 1;
      for (int j = 0; j < m; ++j) {
        e(j, c1) = log_entry<Real>((a1 - 1) * log(ra) - s[j] * ra, u * (a1 + 2));
        e(j, c2) = log_entry<Real>((a2 - 1) * log(rb) - s[j] * rb, u * (a2 + 2));
      }
      ds.terms.push_back({SL<Real>::one(), std::move(e)});
    }
  return combine(ds);
}

// ---- column-correlated ---------------------------------------------------

template <class Real>
SL<Real> column_prefactor(int n, int m, const std::vector<Real>& s) {
  Real lg = log_factorial<Real>(m) + m * sum_log(s);
  for (int k = 1; k <= m; ++k) lg -= log_factorial<Real>(k);
  (void)n;
  return SL<Real>::from_log(parity_sign(long(m) * (m - 1) / 2), lg) / vandermonde(s);
}

// left block k = 1..m from `left`, right block s_j^{k-1}, k = 1..n-m
template <class Real, class Left>
EntryMatrix<Real> column_matrix(int n, int m, const std::vector<Real>& s, Left&& left) {
  using std::log;
  EntryMatrix<Real> e(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 1; k <= m; ++k) e(j, k - 1) = left(j, k);
    for (int k = 1; k <= n - m; ++k)
      e(j, m + k - 1) = log_entry<Real>((k - 1) * log(s[j]), unit_roundoff<Real>() * k);
  }
  return e;
}

template <class Real>
Combined column_max(const ColumnCorrelated& c, double lambda, bool density) {
  using std::log;
  const int n = c.dims.n, m = c.dims.m;
  const auto s = reals<Real>(c.s);
  const Real lam(lambda);
  DetSum<Real> ds;
  ds.prefactor = column_prefactor<Real>(n, m, s);
  const auto base = column_matrix<Real>(
      n, m, s, [&](int j, int k) { return lower_entry<Real>(k, s[j], lam); });
  if (!density) {
    ds.terms.push_back({SL<Real>::one(), base});
    return combine(ds);
  }
  for (int col = 0; col < m; ++col) {
    auto e = base;
    for (int j = 0; j < n; ++j)
      e(j, col) = log_entry<Real>(col * log(lam) - s[j] * lam, unit_roundoff<Real>() * (col + 3));
    ds.terms.push_back({SL<Real>::one(), std::move(e)});
  }
  return combine(ds);
}

template <class Real>
Combined column_min(const ColumnCorrelated& c, double lambda, bool density) {
  using std::log;
  const int n = c.dims.n, m = c.dims.m;
  const auto s = reals<Real>(c.s);
  const Real lam(lambda);
  const double u = unit_roundoff<Real>();
  DetSum<Real> ds;
  if (!density) {
    const Real ls = lam * sum(s);
    ds.prefactor = SL<Real>::from_log(parity_sign(long(m) * (m - 1) / 2),
                                      m * sum_log(s) - ls) /
                   vandermonde(s);
    ds.prefactor_rel_error = u * static_cast<double>(ls);
    EntryMatrix<Real> e(n, n);
    for (int j = 0; j < n; ++j) {
      const Real log_s = log(s[j]);
      for (int k = 1; k <= m; ++k) e(j, k - 1) = log_entry<Real>(-k * log_s, u * k);
      for (int k = 1; k <= n - m; ++k)
        e(j, m + k - 1) = log_entry<Real>(lam * s[j] + (k - 1) * log_s,
                                          u * (k + 2 + static_cast<double>(lam * s[j])));
    }
    ds.terms.push_back({SL<Real>::one(), std::move(e)});
    return combine(ds);
  }
  ds.prefactor = column_prefactor<Real>(n, m, s);
  const auto base = column_matrix<Real>(
      n, m, s, [&](int j, int k) { return upper_entry<Real>(k, s[j], lam); });
  for (int col = 0; col < m; ++col) {
    auto e = base;
    for (int j = 0; j < n; ++j)
      e(j, col) = log_entry<Real>(col * log(lam) - s[j] * lam, u * (col + 3));
    ds.terms.push_back({SL<Real>::one(), std::move(e)});
  }
  return combine(ds);
}

// ---- doubly correlated ---------------------------------------------------

template <class Real>
DetSum<Real> doubly_min_sum(const DoublyCorrelated& c, double lambda, bool density) {
  using std::log;
  const int n = c.dims.n;
  const long big_n = long(n) * (n - 1) / 2;
  const auto r = reals<Real>(c.r);
  const auto s = reals<Real>(c.s);
  const Real lam(lambda);
  const double u = unit_roundoff<Real>();
  Real lg = -Real(big_n) * log(lam);
  for (int j = 1; j < n; ++j) lg += log_factorial<Real>(j);
  DetSum<Real> ds;
  ds.prefactor = SL<Real>::from_log(parity_sign(big_n), lg) / vandermonde(r) / vandermonde(s);
  ds.prefactor_rel_error = u * (n + std::abs(static_cast<double>(lg)));
  EntryMatrix<Real> base(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      const Real x = lam * r[j] * s[l];
      base(j, l) = log_entry<Real>(-x, u * (2 + static_cast<double>(x)));
    }
  if (!density) {
    ds.terms.push_back({SL<Real>::one(), std::move(base)});
    return ds;
  }
  if (big_n > 0) ds.terms.push_back({SL<Real>::from_value(Real(big_n) / lam), base});
  for (int col = 0; col < n; ++col) {
    auto e = base;
    for (int j = 0; j < n; ++j) {
      const Real x = r[j] * s[col];
      e(j, col) = log_entry<Real>(log(x) - lam * x, u * (3 + static_cast<double>(lam * x)));
    }
    ds.terms.push_back({SL<Real>::one(), std::move(e)});
  }
  return ds;
}

// Each column depends on lambda only through lambda s_l, so the density is
// the prefactor derivative plus one column-replaced determinant per column.
template <class Real>
DetSum<Real> doubly_max_sum(const DoublyCorrelated& c, double lambda, bool density) {
  using std::log;
  const int n = c.dims.n, m = c.dims.m;
  const long big_n = long(n) * (n - 1) / 2;
  const auto r = reals<Real>(c.r);
  const auto s = reals<Real>(c.s);
  const Real lam(lambda);
  const Real log_lam = log(lam);
  const double u = unit_roundoff<Real>();

  Real lg = n * sum_log(r) - Real(big_n) * log_lam;
  for (int j = 1; j < n; ++j) lg -= j * log(Real(j));
  for (int p = 1; p <= n - m - 1; ++p)
    lg += log_factorial<Real>(n - 1) - log_factorial<Real>(n - p - 1);
  for (const auto& v : s) lg += n * (log_lam + log(v));
  DetSum<Real> ds;
  ds.prefactor = SL<Real>::from_log(parity_sign(big_n), lg) / vandermonde(r) / vandermonde(s);
  ds.prefactor_rel_error = u * (n + std::abs(static_cast<double>(lg)));

  // e^{-x} 1F1(n; n+1; x) / n and (lambda s_l)^{-j}
  EntryMatrix<Real> e(n, n);
  const Real log_n = log(Real(n));
  for (int l = 0; l < n; ++l) {
    for (int j = 0; j < m; ++j) {
      const Real x = lam * r[j] * s[l];
      const auto k = detail::log_kummer_positive<Real>(n, n + 1, x);
      e(j, l) = log_entry<Real>(-x + k.log_value - log_n,
                                k.rel_error + u * (2 + static_cast<double>(x)));
    }
    const Real log_ls = log_lam + log(s[l]);
    for (int j = 1; j <= n - m; ++j) e(m + j - 1, l) = log_entry<Real>(-j * log_ls, u * (j + 1));
  }
  if (!density) {
    ds.terms.push_back({SL<Real>::one(), std::move(e)});
    return ds;
  }
  const long power = long(n) * n - big_n;
  ds.terms.push_back({SL<Real>::from_value(Real(power) / lam), e});
  // d/dlambda of the entries: -r s e^{-x} 1F1(n; n+2; x) / (n (n+1)) and -j (lambda s)^{-j} / lambda
  const Real log_nn1 = log(Real(n) * (n + 1));
  for (int l = 0; l < n; ++l) {
    auto d = e;
    for (int j = 0; j < m; ++j) {
      const Real x = lam * r[j] * s[l];
      const auto k = detail::log_kummer_positive<Real>(n, n + 2, x);
      d(j, l) = log_entry<Real>(log(r[j] * s[l]) - x + k.log_value - log_nn1,
                                k.rel_error + u * (3 + static_cast<double>(x)), -1);
    }
    const Real log_ls = log_lam + log(s[l]);
    for (int j = 1; j <= n - m; ++j)
      d(m + j - 1, l) = log_entry<Real>(log(Real(j)) - j * log_ls - log_lam, u * (j + 2), -1);
    ds.terms.push_back({SL<Real>::one(), std::move(d)});
  }
  return ds;
}

template <class Real>
Combined dispatch_cdf(const ModelCase& mc, Statistic stat, double lambda) {
  return std::visit(
      [&](const auto& c) -> Combined {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, RowCorrelated>) {
          if (stat == Statistic::Max) return combine(row_max_sum<Real>(c, lambda, false));
          return row_min<Real>(c, lambda, false);
        } else if constexpr (std::is_same_v<T, ColumnCorrelated>) {
          if (stat == Statistic::Max) return column_max<Real>(c, lambda, false);
          return column_min<Real>(c, lambda, false);
        } else {
          if (stat == Statistic::Max) return combine(doubly_max_sum<Real>(c, lambda, false));
          return combine(doubly_min_sum<Real>(c, lambda, false));
        }
      },
      mc);
}

void require_doubly_min_square(const ModelCase& mc) {
  if (const auto* d = std::get_if<DoublyCorrelated>(&mc); d && d->dims.m != d->dims.n)
    throw std::domain_error(
        "smallest-eigenvalue distribution of the doubly correlated case requires m == n");
}

const RowCorrelated& require_row(const ModelCase& mc, const char* what) {
  const auto* r = std::get_if<RowCorrelated>(&mc);
  if (!r) throw std::invalid_argument(std::string(what) + " is available for the row-correlated case only");
  return *r;
}

}  // namespace

std::string_view precision_name(Precision p) {
  switch (p) {
    case Precision::Double: return "double";
    case Precision::Extended: return "extended";
    case Precision::Auto: return "auto";
  }
  return "unknown";
}

Precision parse_precision(std::string_view name) {
  if (name == "double") return Precision::Double;
  if (name == "extended") return Precision::Extended;
  if (name == "auto") return Precision::Auto;
  throw std::invalid_argument("unknown precision '" + std::string(name) +
                              "' (expected double, extended or auto)");
}

bool EvalReport::has_warning(std::string_view tag) const {
  return std::any_of(warnings.begin(), warnings.end(),
                     [&](const Warning& w) { return w.tag == tag; });
}

EvalReport cdf_max(const ModelCase& c, double lambda, const EvalOptions& opts) {
  require_positive(lambda, "lambda");
  return evaluate(c, Quantity::Probability, opts, [&]<class Real>(std::type_identity<Real>) {
    return dispatch_cdf<Real>(c, Statistic::Max, lambda);
  });
}

EvalReport cdf_min(const ModelCase& c, double lambda, const EvalOptions& opts) {
  require_positive(lambda, "lambda");
  require_doubly_min_square(c);
  return evaluate(c, Quantity::Probability, opts, [&]<class Real>(std::type_identity<Real>) {
    return dispatch_cdf<Real>(c, Statistic::Min, lambda);
  });
}

EvalReport cdf(const ModelCase& c, Statistic stat, double lambda, const EvalOptions& opts) {
  return stat == Statistic::Max ? cdf_max(c, lambda, opts) : cdf_min(c, lambda, opts);
}

EvalReport pdf_max(const ModelCase& c, double lambda, const EvalOptions& opts) {
  require_positive(lambda, "lambda");
  return evaluate(c, Quantity::Density, opts, [&]<class Real>(std::type_identity<Real>) {
    if (const auto* r = std::get_if<RowCorrelated>(&c))
      return combine(row_max_sum<Real>(*r, lambda, true));
    if (const auto* d = std::get_if<DoublyCorrelated>(&c))
      return combine(doubly_max_sum<Real>(*d, lambda, true));
    return column_max<Real>(std::get<ColumnCorrelated>(c), lambda, true);
  });
}

EvalReport pdf_min(const ModelCase& c, double lambda, const EvalOptions& opts) {
  require_positive(lambda, "lambda");
  require_doubly_min_square(c);
  return evaluate(c, Quantity::Density, opts, [&]<class Real>(std::type_identity<Real>) {
    if (const auto* r = std::get_if<RowCorrelated>(&c)) return row_min<Real>(*r, lambda, true);
    if (const auto* k = std::get_if<ColumnCorrelated>(&c))
      return column_min<Real>(*k, lambda, true);
    return combine(doubly_min_sum<Real>(std::get<DoublyCorrelated>(c), lambda, true));
  });
}

EvalReport pdf(const ModelCase& c, Statistic stat, double lambda, const EvalOptions& opts) {
  return stat == Statistic::Max ? pdf_max(c, lambda, opts) : pdf_min(c, lambda, opts);
}

EvalReport prob_gap(const ModelCase& c, double a, double b, const EvalOptions& opts) {
  const auto& row = require_row(c, "prob_gap");
  require_positive(a, "a");
  if (!(b > a)) throw std::invalid_argument("b must exceed a");
  return evaluate(c, Quantity::Probability, opts, [&]<class Real>(std::type_identity<Real>) {
    return row_gap<Real>(row, a, b);
  });
}

EvalReport pdf_joint_minmax(const ModelCase& c, double a, double b, const EvalOptions& opts) {
  const auto& row = require_row(c, "pdf_joint_minmax");
  require_positive(a, "a");
  if (!(b > a) || !std::isfinite(b)) throw std::invalid_argument("b must be finite and exceed a");
  return evaluate(c, Quantity::Density, opts, [&]<class Real>(std::type_identity<Real>) {
    return row_joint<Real>(row, a, b);
  });
}

EvalReport cdf_min_row_tricomi(const ModelCase& c, double lambda, const EvalOptions& opts) {
  const auto& row = require_row(c, "cdf_min_row_tricomi");
  require_positive(lambda, "lambda");
  return evaluate(c, Quantity::Probability, opts, [&]<class Real>(std::type_identity<Real>) {
    return row_min_tricomi<Real>(row, lambda);
  });
}

SignedLogValue hyp1f1_matrix_det(int n, std::span<const double> x) {
  const int m = static_cast<int>(x.size());
  if (m < 1 || n < m) throw std::invalid_argument("hyp1f1_matrix_det: need n >= m >= 1");
  for (double v : x)
    if (!std::isfinite(v)) throw std::invalid_argument("hyp1f1_matrix_det: x must be finite");
  const std::vector<double> xs(x.begin(), x.end());
  const auto vd = vandermonde(xs);
  if (vd.is_zero()) throw std::invalid_argument("hyp1f1_matrix_det: x must be distinct");

  double lg = 0;
  for (int k = 1; k <= m; ++k)
    lg += log_factorial<double>(n + k - 1) - log_factorial<double>(k - 1) -
          log_factorial<double>(n - m + k - 1);
  EntryMatrix<double> e(m, m);
  for (int j = 0; j < m; ++j)
    for (int k = 1; k <= m; ++k) {
      const int a = n - m + k;
      const double v = xs[j];
      if (v < 0) {
        e(j, k - 1) = lower_entry<double>(a, -v, 1.0);
      } else if (v == 0) {
        e(j, k - 1) = log_entry<double>(-std::log(double(a)), 0.0);
      } else {
        const auto kr = detail::log_kummer_positive<double>(a, a + 1, v);
        e(j, k - 1) = log_entry<double>(kr.log_value - std::log(double(a)), kr.rel_error);
      }
    }
  const auto d = detail::logdet_entries(e);
  return SignedLogValue::from_log(1, lg) * d.det / vd;
}

}  // namespace wishart::detform
