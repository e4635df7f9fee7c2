#include "wishart/schur.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "kernels.hpp"

namespace wishart::schur {
namespace {

using detail::Extended;

void collect(int slot, int remaining, int cap, bool exact, std::vector<int>& cur,
             std::vector<Partition>& out) {
  if (slot == static_cast<int>(cur.size())) {
    if (!exact || remaining == 0) out.push_back({cur});
    return;
  }
  const int slots_left = static_cast<int>(cur.size()) - slot;
  const int hi = std::min(cap, remaining);
  for (int p = 0; p <= hi; ++p) {
    // the remaining slots can absorb at most p each
    if (exact && static_cast<long>(p) * slots_left < remaining) continue;
    cur[slot] = p;
    collect(slot + 1, remaining - p, p, exact, cur, out);
  }
  cur[slot] = 0;
}

std::vector<Partition> enumerate(int weight, int max_part, int length, bool exact) {
  if (length < 1) throw std::invalid_argument("partitions: length must be >= 1");
  std::vector<Partition> out;
  if (weight < 0) return out;
  std::vector<int> cur(static_cast<std::size_t>(length), 0);
  const int cap = max_part < 0 ? weight : std::min(max_part, weight);
  collect(0, weight, cap, exact, cur, out);
  return out;
}

// h_0..h_kmax of x by h^{(i)}_k = h^{(i-1)}_k + x_i h^{(i)}_{k-1}
template <class Real>
std::vector<Real> complete_homogeneous(std::span<const Real> x, int kmax) {
  std::vector<Real> h(static_cast<std::size_t>(kmax + 1), Real(0));
  h[0] = 1;
  for (const auto& xi : x)
    for (int k = 1; k <= kmax; ++k) h[k] += xi * h[k - 1];
  return h;
}

// Bareiss elimination with row pivoting on zero pivots.
template <class Real>
Real bareiss_det(std::vector<std::vector<Real>> a) {
  const std::size_t n = a.size();
  if (n == 0) return Real(1);
  int sign = 1;
  Real prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return Real(0);
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

template <class Real>
Real jacobi_trudi(const Partition& k, const std::vector<Real>& h, std::size_t nvars) {
  const int len = k.length();
  if (len > static_cast<int>(nvars)) return Real(0);
  std::vector<std::vector<Real>> a(len, std::vector<Real>(len, Real(0)));
  for (int i = 0; i < len; ++i)
    for (int j = 0; j < len; ++j) {
      const int idx = k.parts[i] - i + j;
      if (idx >= 0) a[i][j] = h[idx];
    }
  return bareiss_det(std::move(a));
}

template <class Real>
Real rising(const Real& c, int k) {
  Real r = 1;
  for (int i = 0; i < k; ++i) r *= c + i;
  return r;
}

template <class Real>
Real pochhammer(const Real& a, const Partition& k) {
  Real r = 1;
  for (std::size_t j = 0; j < k.parts.size(); ++j) r *= rising(a - Real(j), k.parts[j]);
  return r;
}

template <class Real>
Real dprime(const Partition& k, int m) {
  Real num = pochhammer(Real(m), k);
  Real den = 1;
  const int len = static_cast<int>(k.parts.size());
  for (int i = 0; i < len; ++i)
    for (int j = i + 1; j < len; ++j)
      den *= Real(j - i + k.parts[i] - k.parts[j]) / (j - i);
  return num / den;
}

Partition padded(const Partition& k, int m) {
  if (k.length() > m)
    throw std::invalid_argument("partition has more nonzero parts than variables");
  Partition p;
  p.parts.assign(static_cast<std::size_t>(m), 0);
  for (int i = 0; i < k.length(); ++i) p.parts[i] = k.parts[i];
  return p;
}

struct RawSeries {
  Extended value;
  int truncation_weight;
  Extended tail_bound;
  bool controlled;
};

// sum_K [a]_K / (d'_K [b]_K) s_K(x), every term assumed of one sign
RawSeries positive_series(const Extended& a, const Extended& b, std::span<const Extended> x,
                          int max_weight, double tail_tol) {
  const int m = static_cast<int>(x.size());
  const auto h = complete_homogeneous<Extended>(x, max_weight + m);
  RawSeries out{Extended(0), 0, Extended(0), true};
  Extended prev_shell = -1;
  Extended prev_ratio = -1;
  for (int w = 0; w <= max_weight; ++w) {
    Extended shell = 0;
    for (const auto& k : partitions_of_weight(w, -1, m)) {
      const Extended pb = pochhammer(b, k);
      const Extended term = pochhammer(a, k) / (dprime<Extended>(k, m) * pb) *
                            jacobi_trudi(k, h, x.size());
      out.value += term;
      shell += abs(term);
    }
    out.truncation_weight = w;
    if (w == 0) {
      prev_shell = shell;
      out.tail_bound = 0;
      out.controlled = false;
      continue;
    }
    if (shell == 0) {
      out.tail_bound = 0;
      out.controlled = true;
    } else if (prev_shell > 0) {
      const Extended ratio = shell / prev_shell;
      const bool decreasing = prev_ratio < 0 || ratio <= prev_ratio;
      out.controlled = ratio < 1 && decreasing;
      out.tail_bound = out.controlled ? Extended(shell * ratio / (1 - ratio)) : Extended(0);
      prev_ratio = ratio;
    } else {
      out.controlled = false;
    }
    prev_shell = shell;
    if (tail_tol > 0 && out.controlled && out.tail_bound <= tail_tol * abs(out.value)) break;
  }
  return out;
}

}  // namespace

int Partition::weight() const {
  int w = 0;
  for (int p : parts) w += p;
  return w;
}

int Partition::length() const {
  return static_cast<int>(std::count_if(parts.begin(), parts.end(), [](int p) { return p > 0; }));
}

Partition make_partition(std::vector<int> parts) {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] < 0) throw std::invalid_argument("partition parts must be nonnegative");
    if (i > 0 && parts[i] > parts[i - 1])
      throw std::invalid_argument("partition parts must be nonincreasing");
  }
  return {std::move(parts)};
}

std::vector<Partition> partitions(int max_weight, int max_part, int length) {
  return enumerate(max_weight, max_part, length, false);
}

std::vector<Partition> partitions_of_weight(int weight, int max_part, int length) {
  return enumerate(weight, max_part, length, true);
}

double schur_poly(const Partition& k, std::span<const double> x) {
  if (k.length() > static_cast<int>(x.size())) return 0.0;
  std::vector<Extended> xe(x.begin(), x.end());
  const int kmax = k.parts.empty() ? 0 : k.parts[0] + static_cast<int>(k.parts.size());
  const auto h = complete_homogeneous<Extended>(xe, kmax);
  return static_cast<double>(jacobi_trudi(k, h, x.size()));
}

double pochhammer_partition(double a, const Partition& k, int m) {
  const Partition p = padded(k, m);
  int sign = 1;
  double log_abs = 0;
  for (int j = 0; j < m; ++j) {
    const double c = a - j;
    if (p.parts[j] == 0) continue;
    if (c <= 0 && c == std::floor(c))
      throw std::domain_error("pochhammer_partition: Gamma pole at a - j + 1 = " +
                              std::to_string(c));
    for (int i = 0; i < p.parts[j]; ++i) {
      const double f = c + i;
      if (f == 0) return 0.0;
      if (f < 0) sign = -sign;
      log_abs += std::log(std::abs(f));
    }
  }
  return sign * std::exp(log_abs);
}

double d_prime(const Partition& k, int m) {
  return static_cast<double>(dprime<Extended>(padded(k, m), m));
}

SeriesValue hyp1f1_multivar(double a, double b, std::span<const double> x, int max_weight,
                            double tail_tol) {
  const int m = static_cast<int>(x.size());
  if (m < 1) throw std::invalid_argument("hyp1f1_multivar: x must be nonempty");
  if (max_weight < 0) throw std::invalid_argument("hyp1f1_multivar: max_weight must be >= 0");
  for (int j = 0; j < m; ++j)
    if (!(b - j > 0)) throw std::invalid_argument("hyp1f1_multivar: need b - j + 1 > 0 for j <= m");
  for (double v : x)
    if (!std::isfinite(v)) throw std::invalid_argument("hyp1f1_multivar: x must be finite");

  const bool all_nonpositive = std::all_of(x.begin(), x.end(), [](double v) { return v <= 0; });
  std::vector<Extended> xe(x.begin(), x.end());
  Extended front = 1;
  Extended ea = a;
  if (all_nonpositive) {
    Extended tr = 0;
    for (auto& v : xe) {
      tr += v;
      v = -v;
    }
    front = exp(tr);
    ea = Extended(b) - Extended(a);
  }
  const RawSeries raw = positive_series(ea, Extended(b), xe, max_weight, tail_tol);
  SeriesValue out;
  out.value = static_cast<double>(front * raw.value);
  out.truncation_weight = raw.truncation_weight;
  out.tail_bound = static_cast<double>(front * raw.tail_bound);
  out.tail_controlled = raw.controlled || raw.truncation_weight == 0;
  return out;
}

SeriesValue cdf_max_schur(double lambda, Dimensions dims, const Spectrum& s, int max_weight,
                          double tail_tol) {
  if (!(lambda > 0) || !std::isfinite(lambda))
    throw std::invalid_argument("cdf_max_schur: lambda must be positive");
  const int n = dims.n, m = dims.m;
  if (static_cast<int>(s.size()) != m)
    throw std::invalid_argument("cdf_max_schur: spectrum length must equal m");
  std::vector<double> x;
  double log_pref = 0;
  for (int k = 1; k <= m; ++k)
    log_pref += detail::log_factorial<double>(k - 1) - detail::log_factorial<double>(n + k - 1);
  for (double v : s.values()) {
    x.push_back(-lambda * v);
    log_pref += n * std::log(lambda * v);
  }
  SeriesValue f = hyp1f1_multivar(n, n + m, x, max_weight, tail_tol);
  const double pref = std::exp(log_pref);
  f.value *= pref;
  f.tail_bound *= pref;
  return f;
}

double cdf_min_schur(double lambda, Dimensions dims, const Spectrum& s) {
  if (!(lambda > 0) || !std::isfinite(lambda))
    throw std::invalid_argument("cdf_min_schur: lambda must be positive");
  const int n = dims.n, m = dims.m;
  if (static_cast<int>(s.size()) != m)
    throw std::invalid_argument("cdf_min_schur: spectrum length must equal m");
  std::vector<Extended> x(s.values().begin(), s.values().end());
  const int top = m * (n - m);
  const auto h = complete_homogeneous<Extended>(x, top + m);
  const Extended lam = lambda;
  Extended total = 0;
  Extended lam_k = 1;
  Extended sum_s = 0;
  for (const auto& v : x) sum_s += v;
  for (int k = 0; k <= top; ++k) {
    Extended shell = 0;
    for (const auto& p : partitions_of_weight(k, n - m, m))
      shell += jacobi_trudi(p, h, x.size()) / dprime<Extended>(p, m);
    total += lam_k * shell;
    lam_k *= lam;
  }
  return static_cast<double>(exp(-lam * sum_s) * total);
}

}  // namespace wishart::schur
