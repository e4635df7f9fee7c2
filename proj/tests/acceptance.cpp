// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "wishart/detform.hpp"
#include "wishart/montecarlo.hpp"
#include "wishart/schur.hpp"

using namespace wishart;
using detform::EvalOptions;
using detform::Precision;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const Outcome& o, double secs) {
  std::printf("%s criterion %d: %s [%s] (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, title,
              o.detail.c_str(), secs);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

Spectrum sp(std::vector<double> v) { return validate_spectrum(v); }

// Random spectrum whose values are separated by at least `gap` relative to the range.
std::vector<double> random_values(std::mt19937_64& rng, int len, double lo, double hi,
                                  double gap = 0.05) {
  std::uniform_real_distribution<double> u(lo, hi);
  for (;;) {
    std::vector<double> v(len);
    for (auto& x : v) x = u(rng);
    std::sort(v.begin(), v.end());
    bool ok = true;
    for (int i = 1; i < len; ++i) ok = ok && v[i] - v[i - 1] >= gap * (hi - lo);
    if (ok) return v;
  }
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Outcome closed_form_min() {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> ul(1e-3, 3.0);
  double worst = 0, worst_det = 0;
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + t % 6;
    const auto s = random_values(rng, n, 0.1, 10.0, 0.01);
    const double lam = ul(rng);
    double sum = 0;
    for (double x : s) sum += x;
    const auto c = make_row_case(n, n, sp(s));
    const double closed = std::exp(-lam * sum);
    worst = std::max(worst, std::abs(detform::cdf_min(c, lam).value - closed));
    // the U-function determinant has no m = n shortcut
    worst_det = std::max(worst_det, std::abs(detform::cdf_min_row_tricomi(c, lam).value - closed));
  }
  return {worst <= 1e-12 && worst_det <= 1e-12,
          fmt("50 cases, max abs error %.3g, determinant construction %.3g (tol 1e-12)", worst,
              worst_det)};
}

Outcome schur_min() {
  std::mt19937_64 rng(202);
  std::uniform_int_distribution<int> un(1, 6);
  std::uniform_real_distribution<double> ut(0.1, 4.0);
  double worst = 0;
  for (int t = 0; t < 50; ++t) {
    const int n = un(rng);
    const int m = std::uniform_int_distribution<int>(1, std::min(n, 4))(rng);
    const auto s = random_values(rng, m, 0.2, 5.0);
    double sum = 0;
    for (double x : s) sum += x;
    const double lam = ut(rng) / sum;
    const double det = detform::cdf_min(make_row_case(n, m, sp(s)), lam).value;
    const double ser = schur::cdf_min_schur(lam, {n, m}, sp(s));
    worst = std::max(worst, rel_diff(det, ser));
  }
  return {worst <= 1e-10, fmt("50 cases, max rel diff %.3g (tol 1e-10)", worst)};
}

Outcome schur_max() {
  std::mt19937_64 rng(303);
  std::uniform_int_distribution<int> un(1, 5);
  std::uniform_real_distribution<double> ux(0.2, 8.0);
  double worst = 0, worst_tail = 0;
  bool controlled = true;
  for (int t = 0; t < 30; ++t) {
    const int n = un(rng);
    const int m = std::uniform_int_distribution<int>(1, std::min(n, 3))(rng);
    const auto s = random_values(rng, m, 0.2, 5.0);
    const double lam = ux(rng) / s.back();
    const double det = detform::cdf_max(make_row_case(n, m, sp(s)), lam).value;
    const auto ser = schur::cdf_max_schur(lam, {n, m}, sp(s), 200, 1e-13);
    controlled = controlled && ser.tail_controlled;
    worst_tail = std::max(worst_tail, ser.tail_bound);
    worst = std::max(worst, rel_diff(det, ser.value));
  }
  return {worst <= 1e-8 && controlled && worst_tail < 1e-12,
          fmt("30 cases, max rel diff %.3g (tol 1e-8), max tail bound %.3g", worst, worst_tail)};
}

Outcome f3_identity() {
  std::mt19937_64 rng(404);
  double worst = 0;
  for (int t = 0; t < 20; ++t) {
    const int m = 1 + t % 3;
    const int n = std::uniform_int_distribution<int>(m, 5)(rng);
    const auto x = random_values(rng, m, -3.0, 0.0);
    const double det = detform::hyp1f1_matrix_det(n, x).value();
    const double ser = schur::hyp1f1_multivar(n, n + m, x, 200, 1e-15).value;
    worst = std::max(worst, rel_diff(det, ser));
  }
  return {worst <= 1e-8, fmt("20 points, max rel diff %.3g (tol 1e-8)", worst)};
}

struct McCase {
  const char* label;
  ModelCase c;
  Statistic stat;
};

Outcome monte_carlo() {
  const std::vector<McCase> cases{
      {"row max", make_row_case(4, 3, sp({0.5, 1, 2})), Statistic::Max},
      {"row min", make_row_case(4, 3, sp({0.5, 1, 2})), Statistic::Min},
      {"column max", make_column_case(4, 2, sp({1, 1.5, 2.5, 4})), Statistic::Max},
      {"column min", make_column_case(4, 2, sp({1, 1.5, 2.5, 4})), Statistic::Min},
      {"doubly m=n max", make_doubly_case(3, 3, sp({1, 2, 3}), sp({0.8, 1.5, 2.2})), Statistic::Max},
      {"doubly m=n min", make_doubly_case(3, 3, sp({1, 2, 3}), sp({0.8, 1.5, 2.2})), Statistic::Min},
      {"doubly m<n max", make_doubly_case(5, 2, sp({1, 1.6}), sp({1, 1.7, 2.4, 3.1, 3.8})),
       Statistic::Max},
  };
  mc::MCConfig cfg{200000, 42, 0.99, 0};
  const double eps = mc::dkw_epsilon(cfg.samples, cfg.confidence);
  double worst_margin = 1;
  std::string bad;
  for (const auto& mcase : cases) {
    auto x = mc::sample_extremes(mcase.c, mcase.stat, cfg);
    std::vector<double> sorted = x;
    std::sort(sorted.begin(), sorted.end());
    const double lo = sorted[sorted.size() / 100], hi = sorted[sorted.size() * 99 / 100];
    std::vector<double> grid;
    for (int i = 0; i < 30; ++i) grid.push_back(lo + (hi - lo) * i / 29.0);
    const auto emp = mc::empirical_cdf_from_samples(x, mcase.stat, grid, cfg.confidence);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double a = detform::cdf(mcase.c, mcase.stat, grid[i]).value;
      const double margin = eps - std::abs(a - emp.fractions[i]);
      if (margin < worst_margin) worst_margin = margin;
      if (margin < 0) bad += std::string(" ") + mcase.label;
    }
  }
  return {bad.empty(), fmt("7 (case, stat), N = 2e5, 30 points, eps %.5f, min margin %.5f", eps,
                           worst_margin) +
                           (bad.empty() ? "" : "; outside:" + bad)};
}

Outcome haar() {
  struct H {
    double lam;
    std::vector<double> r, s;
  };
  const std::vector<H> items{{0.7, {1, 2}, {1, 3}}, {0.4, {1, 2, 3}, {0.5, 1, 1.5}},
                             {0.25, {0.5, 1.5, 2}, {1, 2, 4}}};
  mc::MCConfig cfg{100000, 7, 0.99, 0};
  double worst = 0;
  for (const auto& h : items) {
    const int n = static_cast<int>(h.r.size());
    const auto est = mc::haar_hciz_estimate(h.lam, sp(h.r), sp(h.s), cfg);
    const double exact = detform::cdf_min(make_doubly_case(n, n, sp(h.r), sp(h.s)), h.lam).value;
    worst = std::max(worst, std::abs(est.mean - exact) / est.std_error);
  }
  return {worst <= 3, fmt("n in {2, 3}, N = 1e5, max deviation %.2f standard errors (tol 3)", worst)};
}

Outcome structural() {
  std::vector<std::string> fails;
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) fails.push_back(what);
  };
  const auto row = make_row_case(4, 2, sp({1, 2.5}));
  const auto col = make_column_case(4, 3, sp({0.7, 1.3, 2, 3}));
  const auto dsq = make_doubly_case(3, 3, sp({1, 2, 2.5}), sp({1, 1.5, 3}));
  const auto drect = make_doubly_case(4, 2, sp({1, 1.8}), sp({0.6, 1.1, 1.9, 2.6}));

  // scale invariance: (c s, lambda / c) leaves every probability unchanged
  double scale_err = 0;
  for (double c : {0.1, 3.0, 50.0}) {
    for (double lam : {0.3, 1.0, 2.5}) {
      const auto rowc = make_row_case(4, 2, sp({c, 2.5 * c}));
      const auto colc = make_column_case(4, 3, sp({0.7 * c, 1.3 * c, 2 * c, 3 * c}));
      const auto dsqc = make_doubly_case(3, 3, sp({c, 2 * c, 2.5 * c}), sp({1, 1.5, 3}));
      const auto drc = make_doubly_case(4, 2, sp({1, 1.8}), sp({0.6 * c, 1.1 * c, 1.9 * c, 2.6 * c}));
      for (Statistic st : {Statistic::Max, Statistic::Min}) {
        scale_err = std::max(scale_err, std::abs(detform::cdf(rowc, st, lam / c).value -
                                                 detform::cdf(row, st, lam).value));
        scale_err = std::max(scale_err, std::abs(detform::cdf(colc, st, lam / c).value -
                                                 detform::cdf(col, st, lam).value));
        scale_err = std::max(scale_err, std::abs(detform::cdf(dsqc, st, lam / c).value -
                                                 detform::cdf(dsq, st, lam).value));
      }
      scale_err = std::max(scale_err, std::abs(detform::cdf_max(drc, lam / c).value -
                                               detform::cdf_max(drect, lam).value));
    }
  }
  need(scale_err <= 1e-10, fmt("scale invariance %.3g", scale_err));

  // m = 1: lambda_max = lambda_min
  double comp = 0;
  for (double lam : {0.05, 0.5, 1.7, 6.0}) {
    for (const auto& c : {make_row_case(5, 1, sp({1.4})), make_column_case(4, 1, sp({0.5, 1, 2, 4})),
                          make_doubly_case(3, 1, sp({1.2}), sp({0.5, 1.5, 2}))}) {
      const double sum = detform::cdf_max(c, lam).value +
                         (std::holds_alternative<DoublyCorrelated>(c)
                              ? 1 - detform::cdf_max(c, lam).value
                              : detform::cdf_min(c, lam).value);
      comp = std::max(comp, std::abs(sum - 1));
    }
  }
  // the doubly min with m = 1 < n is outside the formulas, so compare the
  // doubly max with the 1x1 doubly min as well
  for (double lam : {0.2, 1.0}) {
    const auto d1 = make_doubly_case(1, 1, sp({1.3}), sp({0.7}));
    comp = std::max(comp, std::abs(detform::cdf_max(d1, lam).value + detform::cdf_min(d1, lam).value - 1));
  }
  need(comp <= 1e-12, fmt("m=1 complementarity %.3g", comp));

  // row and column cases coincide when m = n
  double rc = 0;
  for (double lam : {0.1, 0.6, 1.5, 4.0}) {
    const auto s = sp({0.6, 1.1, 2.3});
    for (Statistic st : {Statistic::Max, Statistic::Min})
      rc = std::max(rc, std::abs(detform::cdf(make_row_case(3, 3, s), st, lam).value -
                                 detform::cdf(make_column_case(3, 3, s), st, lam).value));
  }
  need(rc <= 1e-9, fmt("row/column agreement %.3g", rc));

  // swapping r and s when m = n
  double sym = 0;
  for (double lam : {0.1, 0.5, 1.2, 3.0}) {
    const auto a = make_doubly_case(3, 3, sp({1, 2, 2.5}), sp({0.7, 1.5, 3}));
    const auto b = make_doubly_case(3, 3, sp({0.7, 1.5, 3}), sp({1, 2, 2.5}));
    for (Statistic st : {Statistic::Max, Statistic::Min})
      sym = std::max(sym, std::abs(detform::cdf(a, st, lam).value - detform::cdf(b, st, lam).value));
  }
  need(sym <= 1e-10, fmt("r/s symmetry %.3g", sym));

  // a huge inverse-covariance eigenvalue removes one row (column case) or one variable (row case)
  double defl = 0;
  for (double lam : {0.3, 1.0, 3.0}) {
    const auto big = make_column_case(4, 2, sp({0.8, 1.5, 2.5, 1e6}));
    const auto small = make_column_case(3, 2, sp({0.8, 1.5, 2.5}));
    for (Statistic st : {Statistic::Max, Statistic::Min})
      defl = std::max(defl, std::abs(detform::cdf(big, st, lam).value - detform::cdf(small, st, lam).value));
    defl = std::max(defl, std::abs(detform::cdf_max(make_row_case(4, 3, sp({0.8, 1.5, 1e6})), lam).value -
                                   detform::cdf_max(make_row_case(4, 2, sp({0.8, 1.5})), lam).value));
  }
  need(defl <= 1e-4, fmt("deflation %.3g", defl));

  // near-identity column covariance reduces the doubly case to the row case
  double red = 0;
  const double delta = 1e-3;
  for (int n : {2, 3, 4}) {
    std::vector<double> s;
    for (int j = 0; j < n; ++j) s.push_back(1 + j * delta);
    const std::vector<double> r{1, 2};
    for (double lam : {0.5, 1.5, 4.0}) {
      red = std::max(red, std::abs(detform::cdf_max(make_doubly_case(n, 2, sp(r), sp(s)), lam).value -
                                   detform::cdf_max(make_row_case(n, 2, sp(r)), lam).value));
      if (n == 2)
        red = std::max(red, std::abs(detform::cdf_min(make_doubly_case(2, 2, sp(r), sp(s)), lam).value -
                                     detform::cdf_min(make_row_case(2, 2, sp(r)), lam).value));
    }
  }
  need(red <= 5e-3, fmt("doubly->row reduction %.3g", red));

  // monotone in lambda with the right limits: strictly in extended precision,
  // and within the reported error in auto mode
  bool mono = true, mono_auto = true;
  double lim = 0;
  for (const auto& c : {row, col, dsq, drect}) {
    const bool has_min = !std::holds_alternative<DoublyCorrelated>(c) ||
                         dimensions_of(c).m == dimensions_of(c).n;
    for (Statistic st : {Statistic::Max, Statistic::Min}) {
      if (st == Statistic::Min && !has_min) continue;
      const double dir = st == Statistic::Max ? 1 : -1;
      detform::EvalReport prev_e, prev_a;
      for (int i = 0; i <= 180; ++i) {
        const double lam = 1e-6 * std::pow(1e9, i / 180.0);
        const auto e = detform::cdf(c, st, lam, EvalOptions{Precision::Extended});
        const auto au = detform::cdf(c, st, lam, EvalOptions{Precision::Auto});
        if (i > 0) {
          mono = mono && dir * (e.value - prev_e.value) >= -1e-14;
          mono_auto = mono_auto && dir * (au.value - prev_a.value) >=
                                       -(1e-14 + au.abs_error_estimate + prev_a.abs_error_estimate);
        }
        prev_e = e;
        prev_a = au;
        const double low_target = st == Statistic::Max ? 0 : 1;
        if (i == 0) lim = std::max(lim, std::abs(e.value - low_target));
        if (i == 180) lim = std::max(lim, std::abs(e.value - (1 - low_target)));
      }
    }
  }
  need(mono, "monotonicity (extended)");
  need(mono_auto, "monotonicity within reported error (auto)");
  need(lim <= 1e-4, fmt("limits %.3g", lim));

  std::string detail = fmt("scale %.2g, m=1 %.2g", scale_err, comp) +
                       fmt(", row/col %.2g, r<->s %.2g", rc, sym) +
                       fmt(", deflation %.2g, reduction %.2g", defl, red) +
                       fmt(", limits %.2g", lim) + (mono && mono_auto ? ", monotone" : ", NOT monotone");
  for (const auto& f : fails) detail += "; failed: " + f;
  return {fails.empty(), detail};
}

// adaptive Gauss-Kronrod over [lo, hi]
double integrate(const std::function<double(double)>& f, double lo, double hi) {
  using boost::math::quadrature::gauss_kronrod;
  double err = 0;
  return gauss_kronrod<double, 31>::integrate(f, lo, hi, 15, 1e-10, &err);
}

Outcome densities() {
  std::mt19937_64 rng(808);
  double worst_int = 0, worst_fd = 0;
  for (int t = 0; t < 10; ++t) {
    ModelCase c;
    double smin = 0;
    switch (t % 4) {
      case 0: {
        const int n = 2 + t % 3, m = 1 + t % 2;
        const auto s = random_values(rng, m, 0.5, 3.0);
        c = make_row_case(n, m, sp(s));
        smin = s.front();
        break;
      }
      case 1: {
        const int n = 3, m = 2;
        const auto s = random_values(rng, n, 0.5, 3.0);
        c = make_column_case(n, m, sp(s));
        smin = s.front();
        break;
      }
      case 2: {
        const auto r = random_values(rng, 2, 0.5, 3.0);
        const auto s = random_values(rng, 2, 0.5, 3.0);
        c = make_doubly_case(2, 2, sp(r), sp(s));
        smin = r.front() * s.front();
        break;
      }
      default: {
        const auto r = random_values(rng, 2, 0.5, 3.0);
        const auto s = random_values(rng, 3, 0.5, 3.0);
        c = make_doubly_case(3, 2, sp(r), sp(s));
        smin = r.front() * s.front();
        break;
      }
    }
    const bool has_min = !std::holds_alternative<DoublyCorrelated>(c) ||
                         dimensions_of(c).m == dimensions_of(c).n;
    const double upper = 80.0 / smin;
    // split at a few points so the adaptive rule sees the bulk
    auto total = [&](Statistic st) {
      double sum = 0, lo = 0;
      for (double hi : {0.5 / smin, 2.0 / smin, 8.0 / smin, upper}) {
        sum += integrate([&](double x) { return x <= 0 ? 0.0 : detform::pdf(c, st, x, EvalOptions{Precision::Auto}).value; }, lo, hi);
        lo = hi;
      }
      return sum;
    };
    worst_int = std::max(worst_int, std::abs(total(Statistic::Max) - 1));
    if (has_min) worst_int = std::max(worst_int, std::abs(total(Statistic::Min) - 1));

    for (double u : {0.3, 1.0, 2.5}) {
      const double x = u / smin, h = 1e-5 * x;
      const double fd_max = (detform::cdf_max(c, x + h).value - detform::cdf_max(c, x - h).value) / (2 * h);
      worst_fd = std::max(worst_fd, std::abs(fd_max - detform::pdf_max(c, x).value));
      if (has_min) {
        const double fd_min = -(detform::cdf_min(c, x + h).value - detform::cdf_min(c, x - h).value) / (2 * h);
        worst_fd = std::max(worst_fd, std::abs(fd_min - detform::pdf_min(c, x).value));
      }
    }
  }

  const auto j = make_row_case(2, 2, sp({1, 2}));
  const double top = 60.0;
  const double joint = integrate(
      [&](double a) {
        if (a <= 0) return 0.0;
        return integrate([&](double b) { return b <= a ? 0.0 : detform::pdf_joint_minmax(j, a, b).value; },
                         a, top);
      },
      0, top);
  const double jerr = std::abs(joint - 1);
  return {worst_int <= 1e-6 && worst_fd <= 1e-7 && jerr <= 1e-4,
          fmt("10 cases, |integral - 1| %.3g (tol 1e-6), FD diff %.3g (tol 1e-7)", worst_int, worst_fd) +
              fmt(", joint |integral - 1| %.3g (tol 1e-4)", jerr)};
}

Outcome clustered() {
  const auto s = sp({1, 1 + 1e-4, 1 + 2e-4});
  const auto c = make_row_case(5, 3, s);
  const auto d = detform::cdf_max(c, 1.0);
  const bool flagged = d.cancellation_digits > 12 && d.has_warning("cancellation");
  const auto e = detform::cdf_max(c, 1.0, EvalOptions{Precision::Extended});
  const auto ser = schur::cdf_max_schur(1.0, {5, 3}, s);
  const double diff = rel_diff(e.value, ser.value);
  return {flagged || diff <= 1e-8,
          fmt("double: %.1f cancellation digits", d.cancellation_digits) +
              (flagged ? " with warning" : " NO warning") +
              fmt("; extended vs series rel diff %.3g (tol 1e-8)", diff)};
}

}  // namespace

int main() {
  struct Item {
    int id;
    const char* title;
    Outcome (*run)();
    double limit;  // seconds, 0 = none
  };
  const Item items[] = {
      {1, "smallest eigenvalue closed form at m = n", closed_form_min, 1},
      {2, "determinant vs series, smallest eigenvalue", schur_min, 10},
      {3, "determinant vs series, largest eigenvalue", schur_max, 60},
      {4, "matrix-argument 1F1 determinant identity", f3_identity, 0},
      {5, "Monte Carlo DKW band", monte_carlo, 300},
      {6, "Haar unitary integral", haar, 0},
      {7, "structural properties", structural, 0},
      {8, "densities", densities, 0},
      {9, "clustered spectrum reliability", clustered, 0},
  };
  for (const auto& it : items) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = it.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = seconds_since(t0);
    if (it.limit > 0 && secs > it.limit) {
      o.pass = false;
      o.detail += fmt("; runtime above %.0f s", it.limit);
    }
    report(it.id, it.title, o, secs);
  }
  std::printf("%s: %d of 9 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
