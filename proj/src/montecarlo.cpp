#include "wishart/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <variant>

#include "parallel.hpp"

namespace wishart::mc {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
// Samples per reduction block. Fixed so that floating-point sums are
// grouped identically for every thread count.
constexpr std::int64_t kBlock = 4096;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double frobenius(const ComplexMatrix& h) {
  double s = 0;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) s += std::norm(h(i, j));
  return std::sqrt(s);
}

// Column scalings 1/sqrt(spectrum) for Z = diag(row_scale) G diag(col_scale).
struct Coloring {
  int n = 0;
  int m = 0;
  std::vector<double> row_scale;
  std::vector<double> col_scale;
};

std::vector<double> inv_sqrt(const Spectrum& s) {
  std::vector<double> out;
  out.reserve(s.size());
  for (double v : s.values()) out.push_back(1.0 / std::sqrt(v));
  return out;
}

Coloring coloring_of(const ModelCase& c) {
  Coloring col;
  const auto d = dimensions_of(c);
  col.n = d.n;
  col.m = d.m;
  col.row_scale.assign(static_cast<std::size_t>(d.n), 1.0);
  col.col_scale.assign(static_cast<std::size_t>(d.m), 1.0);
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, RowCorrelated>) {
          col.col_scale = inv_sqrt(k.s);
        } else if constexpr (std::is_same_v<T, ColumnCorrelated>) {
          col.row_scale = inv_sqrt(k.s);
        } else {
          col.col_scale = inv_sqrt(k.r);
          col.row_scale = inv_sqrt(k.s);
        }
      },
      c);
  return col;
}

ComplexMatrix sample_colored(const Coloring& col, std::uint64_t index, std::uint64_t seed) {
  CounterRng rng(seed, index);
  ComplexMatrix z(static_cast<std::size_t>(col.n), static_cast<std::size_t>(col.m));
  for (int j = 0; j < col.n; ++j)
    for (int k = 0; k < col.m; ++k)
      z(j, k) = rng.complex_normal() * (col.row_scale[j] * col.col_scale[k]);
  return z;
}

ComplexMatrix gram(const ComplexMatrix& z) {
  const std::size_t n = z.rows(), m = z.cols();
  ComplexMatrix a(m, m);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t l = k; l < m; ++l) {
      std::complex<double> acc{};
      for (std::size_t j = 0; j < n; ++j) acc += std::conj(z(j, k)) * z(j, l);
      a(k, l) = acc;
      a(l, k) = std::conj(acc);
    }
    a(k, k) = a(k, k).real();
  }
  return a;
}

}  // namespace

// ---------------------------------------------------------------------------

HermitianEigen hermitian_eigen(const ComplexMatrix& h, bool want_vectors) {
  if (!h.square()) throw std::invalid_argument("hermitian_eigs: matrix must be square");
  const std::size_t n = h.rows();
  const double norm = frobenius(h);
  if (!std::isfinite(norm)) throw std::invalid_argument("hermitian_eigs: nonfinite entries");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (std::abs(h(i, j) - std::conj(h(j, i))) > 1e-10 * norm)
        throw std::invalid_argument("hermitian_eigs: matrix is not Hermitian");

  ComplexMatrix a = h;
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  ComplexMatrix v;
  if (want_vectors) {
    v = ComplexMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;
  }

  HermitianEigen out;
  constexpr int kMaxSweeps = 100;
  for (; out.sweeps < kMaxSweeps; ++out.sweeps) {
    double off = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) off += std::norm(a(i, j));
    if (std::sqrt(off) <= 1e-13 * norm) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const std::complex<double> apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        // Phase diag(1, e^{-i phi}) makes the (p,q) block real symmetric,
        // then a real rotation annihilates it.
        const std::complex<double> phase = std::conj(apq / mag);
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const std::complex<double> upp = c, upq = s;
        const std::complex<double> uqp = -s * phase, uqq = c * phase;

        for (std::size_t k = 0; k < n; ++k) {
          const auto akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const auto apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        if (want_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            const auto vkp = v(k, p), vkq = v(k, q);
            v(k, p) = vkp * upp + vkq * uqp;
            v(k, q) = vkp * upq + vkq * uqq;
          }
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  out.values.reserve(n);
  for (auto i : order) out.values.push_back(a(i, i).real());
  if (want_vectors) {
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::vector<double> hermitian_eigs(const ComplexMatrix& h) { return hermitian_eigen(h).values; }

// ---------------------------------------------------------------------------

void validate_config(const MCConfig& cfg) {
  if (cfg.samples < 100) throw std::invalid_argument("MCConfig: samples must be >= 100");
  if (!(cfg.confidence > 0.0 && cfg.confidence < 1.0))
    throw std::invalid_argument("MCConfig: confidence must lie in (0, 1)");
}

CounterRng::CounterRng(std::uint64_t master_seed, std::uint64_t stream_id)
    : key_(mix64(mix64(master_seed) ^ mix64(stream_id * kGolden + 0x632BE59BD9B4E019ULL))) {}

CounterRng::result_type CounterRng::operator()() { return mix64(key_ + (++counter_) * kGolden); }

double CounterRng::uniform() {
  // (x + 0.5) / 2^53 lies strictly inside (0, 1)
  return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

std::complex<double> CounterRng::complex_normal() {
  const double radius = std::sqrt(-std::log(uniform()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

ComplexMatrix sample_matrix(const ModelCase& c, std::uint64_t sample_index,
                            std::uint64_t master_seed) {
  return sample_colored(coloring_of(c), sample_index, master_seed);
}

std::vector<double> sample_extremes(const ModelCase& c, Statistic stat, const MCConfig& cfg) {
  validate_config(cfg);
  const Coloring col = coloring_of(c);
  std::vector<double> out(static_cast<std::size_t>(cfg.samples));
  const std::int64_t blocks = (cfg.samples + kBlock - 1) / kBlock;
  detail::parallel_for(static_cast<std::size_t>(blocks), cfg.threads, [&](std::size_t b) {
    const std::int64_t lo = static_cast<std::int64_t>(b) * kBlock;
    const std::int64_t hi = std::min(cfg.samples, lo + kBlock);
    for (std::int64_t i = lo; i < hi; ++i) {
      const auto z = sample_colored(col, static_cast<std::uint64_t>(i), cfg.master_seed);
      const auto ev = hermitian_eigs(gram(z));
      out[static_cast<std::size_t>(i)] = stat == Statistic::Max ? ev.back() : ev.front();
    }
  });
  return out;
}

double dkw_epsilon(std::int64_t samples, double confidence) {
  if (samples <= 0) throw std::invalid_argument("dkw_epsilon: samples must be positive");
  return std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * static_cast<double>(samples)));
}

EmpiricalCDF empirical_cdf_from_samples(std::span<const double> extremes, Statistic stat,
                                        std::span<const double> grid, double confidence) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0) || (i > 0 && !(grid[i] > grid[i - 1])))
      throw std::invalid_argument("empirical cdf: grid must be positive and increasing");
  }
  std::vector<double> sorted(extremes.begin(), extremes.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  EmpiricalCDF out;
  out.grid.assign(grid.begin(), grid.end());
  out.samples = static_cast<std::int64_t>(sorted.size());
  out.stat = stat;
  out.dkw_epsilon = dkw_epsilon(out.samples, confidence);
  for (double g : grid) {
    if (stat == Statistic::Max) {
      const auto cnt = std::upper_bound(sorted.begin(), sorted.end(), g) - sorted.begin();
      out.fractions.push_back(static_cast<double>(cnt) / n);
    } else {
      const auto cnt = sorted.end() - std::lower_bound(sorted.begin(), sorted.end(), g);
      out.fractions.push_back(static_cast<double>(cnt) / n);
    }
  }
  return out;
}

EmpiricalCDF empirical_extreme_cdf(const ModelCase& c, Statistic stat,
                                   std::span<const double> grid, const MCConfig& cfg) {
  const auto xs = sample_extremes(c, stat, cfg);
  return empirical_cdf_from_samples(xs, stat, grid, cfg.confidence);
}

// ---------------------------------------------------------------------------

ComplexMatrix haar_unitary(int n, CounterRng& rng) {
  if (n < 1) throw std::invalid_argument("haar_unitary: n must be positive");
  const auto N = static_cast<std::size_t>(n);
  ComplexMatrix q(N, N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) q(i, j) = rng.complex_normal();
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      std::complex<double> proj{};
      for (std::size_t k = 0; k < N; ++k) proj += std::conj(q(k, i)) * q(k, j);
      for (std::size_t k = 0; k < N; ++k) q(k, j) -= proj * q(k, i);
    }
    double nrm = 0;
    for (std::size_t k = 0; k < N; ++k) nrm += std::norm(q(k, j));
    nrm = std::sqrt(nrm);
    for (std::size_t k = 0; k < N; ++k) q(k, j) /= nrm;
  }
  return q;
}

HaarEstimate haar_hciz_estimate(double lambda, const Spectrum& r, const Spectrum& s,
                                const MCConfig& cfg) {
  validate_config(cfg);
  if (!(lambda > 0) || !std::isfinite(lambda))
    throw std::invalid_argument("haar_hciz_estimate: lambda must be positive");
  if (r.size() != s.size())
    throw std::invalid_argument("haar_hciz_estimate: r and s must have equal length");
  const int n = static_cast<int>(r.size());
  const std::int64_t blocks = (cfg.samples + kBlock - 1) / kBlock;
  // per-block count, mean and centered sum of squares, merged pairwise
  struct Moments {
    double count = 0, mean = 0, m2 = 0;
  };
  std::vector<Moments> part(static_cast<std::size_t>(blocks));
  detail::parallel_for(static_cast<std::size_t>(blocks), cfg.threads, [&](std::size_t b) {
    const std::int64_t lo = static_cast<std::int64_t>(b) * kBlock;
    const std::int64_t hi = std::min(cfg.samples, lo + kBlock);
    Moments acc;
    for (std::int64_t i = lo; i < hi; ++i) {
      CounterRng rng(cfg.master_seed, static_cast<std::uint64_t>(i));
      const auto v = haar_unitary(n, rng);
      double tr = 0;
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) tr += r[j] * s[l] * std::norm(v(l, j));
      const double f = std::exp(-lambda * tr);
      acc.count += 1;
      const double d = f - acc.mean;
      acc.mean += d / acc.count;
      acc.m2 += d * (f - acc.mean);
    }
    part[b] = acc;
  });
  Moments all;
  for (const auto& p : part) {
    const double count = all.count + p.count;
    const double d = p.mean - all.mean;
    all.mean += d * p.count / count;
    all.m2 += p.m2 + d * d * all.count * p.count / count;
    all.count = count;
  }
  const double N = static_cast<double>(cfg.samples);
  HaarEstimate est;
  est.mean = all.mean;
  const double var = all.m2 / (N - 1.0);
  est.std_error = std::sqrt(var / N);
  return est;
}

}  // namespace wishart::mc
