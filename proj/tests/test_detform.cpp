#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "wishart/detform.hpp"
#include "wishart/schur.hpp"
#include "wishart/specfun.hpp"

using namespace wishart;
using namespace wishart::detform;

namespace {

Spectrum sp(std::vector<double> v) { return validate_spectrum(v); }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("row cdf_max small closed forms") {
  CHECK(cdf_max(make_row_case(1, 1, sp({1})), 1.0).value ==
        doctest::Approx(1 - std::exp(-1.0)).epsilon(1e-14));
  CHECK(cdf_max(make_row_case(3, 1, sp({2})), 1.0).value ==
        doctest::Approx(1 - std::exp(-2.0) * 5).epsilon(1e-14));
}

TEST_CASE("row cdf_max matches the series") {
  const auto c = make_row_case(3, 2, sp({1, 2}));
  const double det = cdf_max(c, 1.5).value;
  const auto ser = schur::cdf_max_schur(1.5, {3, 2}, sp({1, 2}));
  CHECK(ser.tail_controlled);
  CHECK(rel(det, ser.value) <= 1e-8);
  // high-precision reference from an independent arbitrary-precision evaluation
  CHECK(det == doctest::Approx(0.0511199966502681594).epsilon(1e-13));
}

TEST_CASE("row cdf_min examples") {
  CHECK(cdf_min(make_row_case(3, 3, sp({1, 2, 3})), 0.5).value ==
        doctest::Approx(std::exp(-3.0)).epsilon(1e-14));
  CHECK(cdf_min(make_row_case(1, 1, sp({1})), 1.0).value ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  const auto c = make_row_case(4, 2, sp({1, 3}));
  const double ser = schur::cdf_min_schur(0.2, {4, 2}, sp({1, 3}));
  CHECK(rel(cdf_min(c, 0.2).value, ser) <= 1e-10);
  CHECK(rel(cdf_min_row_tricomi(c, 0.2).value, cdf_min(c, 0.2).value) <= 1e-11);
}

TEST_CASE("column case reference values") {
  const auto c = make_column_case(3, 2, sp({1, 2, 3}));
  CHECK(cdf_max(c, 1.0).value == doctest::Approx(0.0267989989204902936).epsilon(1e-12));
  CHECK(cdf_min(c, 0.3).value == doctest::Approx(0.736351701258102545).epsilon(1e-12));
}

TEST_CASE("doubly correlated reference values") {
  const auto d = make_doubly_case(2, 2, sp({1, 2}), sp({1, 1.7}));
  CHECK(cdf_max(d, 1.0).value == doctest::Approx(0.152791071534532732).epsilon(1e-12));
  CHECK(cdf_min(d, 0.4).value == doctest::Approx(0.198545802002722161).epsilon(1e-12));
  struct Ref {
    int n, m;
    double value;
  };
  // r_i = 1 + 0.6 i, s_i = 1 + 0.7 i (i from 0), lambda = 1.5; confirmed by simulation
  for (const Ref& ref : {Ref{2, 1, 0.569657705355460627}, Ref{3, 1, 0.406092464530147006},
                         Ref{3, 2, 0.157616301700373094}, Ref{4, 2, 0.0830990074159857987},
                         Ref{4, 3, 0.0250792650510043150}}) {
    std::vector<double> r, s;
    for (int i = 0; i < ref.m; ++i) r.push_back(1 + 0.6 * i);
    for (int i = 0; i < ref.n; ++i) s.push_back(1 + 0.7 * i);
    const auto c = make_doubly_case(ref.n, ref.m, sp(r), sp(s));
    CHECK(cdf_max(c, 1.5).value == doctest::Approx(ref.value).epsilon(1e-11));
  }
}

TEST_CASE("doubly m < n max reduces to m = n form") {
  // m = n through the general block formula equals the square formula
  const auto sq = make_doubly_case(3, 3, sp({1, 2, 2.5}), sp({1, 1.5, 3}));
  CHECK(cdf_max(sq, 2.0).value == doctest::Approx(0.244790973692330788).epsilon(1e-12));
}

TEST_CASE("doubly min with m < n is rejected") {
  const auto d = make_doubly_case(3, 2, sp({1, 2}), sp({1, 2, 3}));
  CHECK_THROWS_AS(cdf_min(d, 1.0), std::domain_error);
  CHECK_THROWS_AS(pdf_min(d, 1.0), std::domain_error);
  CHECK_NOTHROW(cdf_max(d, 1.0));
}

TEST_CASE("argument errors") {
  const auto c = make_row_case(2, 1, sp({1}));
  CHECK_THROWS_AS(cdf_max(c, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(cdf_min(c, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(pdf_max(c, NAN), std::invalid_argument);
  CHECK_THROWS_AS(prob_gap(c, 2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(prob_gap(c, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(pdf_joint_minmax(c, 1.0, 1.0), std::invalid_argument);
  const auto col = make_column_case(2, 1, sp({1, 2}));
  CHECK_THROWS_AS(prob_gap(col, 0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(cdf_min_row_tricomi(col, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(parse_precision("quad"), std::invalid_argument);
  CHECK(parse_precision("auto") == Precision::Auto);
}

TEST_CASE("prob_gap examples") {
  const auto c1 = make_row_case(2, 1, sp({1}));
  const double expect = (1 - 3 * std::exp(-2.0)) - (1 - 1.5 * std::exp(-0.5));
  CHECK(prob_gap(c1, 0.5, 2.0).value == doctest::Approx(expect).epsilon(1e-13));

  const auto c = make_row_case(3, 2, sp({1, 2}));
  CHECK(std::abs(prob_gap(c, 1e-9, 2.0).value - cdf_max(c, 2.0).value) <= 1e-6);
  CHECK(prob_gap(c, 0.3, INFINITY).value == doctest::Approx(cdf_min(c, 0.3).value).epsilon(1e-12));
  CHECK(std::abs(prob_gap(c, 0.3, 1e3).value - cdf_min(c, 0.3).value) <= 1e-12);
}

TEST_CASE("pdf examples") {
  CHECK(pdf_max(make_row_case(1, 1, sp({1})), 1.0).value ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(pdf_min(make_row_case(1, 1, sp({1})), 1.0).value ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(pdf_min(make_row_case(2, 2, sp({1, 2})), 0.4).value ==
        doctest::Approx(3 * std::exp(-1.2)).epsilon(1e-14));

  auto fd = [](auto&& f, double x) {
    const double h = 1e-5;
    return (f(x + h) - f(x - h)) / (2 * h);
  };
  const auto row = make_row_case(3, 2, sp({1, 2}));
  CHECK(std::abs(pdf_max(row, 1.0).value -
                 fd([&](double x) { return cdf_max(row, x).value; }, 1.0)) <= 1e-7);
  const auto col = make_column_case(3, 2, sp({1, 2, 3}));
  CHECK(std::abs(pdf_min(col, 0.3).value +
                 fd([&](double x) { return cdf_min(col, x).value; }, 0.3)) <= 1e-7);
  CHECK(std::abs(pdf_max(col, 0.8).value -
                 fd([&](double x) { return cdf_max(col, x).value; }, 0.8)) <= 1e-7);
  const auto d = make_doubly_case(2, 2, sp({1, 2}), sp({1, 1.7}));
  CHECK(std::abs(pdf_min(d, 0.4).value +
                 fd([&](double x) { return cdf_min(d, x).value; }, 0.4)) <= 1e-7);
  CHECK(std::abs(pdf_max(d, 1.0).value -
                 fd([&](double x) { return cdf_max(d, x).value; }, 1.0)) <= 1e-7);
  for (const auto& rect : {make_doubly_case(3, 2, sp({1, 2}), sp({0.8, 1.9, 2.6})),
                           make_doubly_case(4, 1, sp({1.3}), sp({0.5, 1, 1.9, 2.6}))})
    for (double x : {0.3, 1.0, 3.0})
      CHECK(std::abs(pdf_max(rect, x).value -
                     fd([&](double y) { return cdf_max(rect, y).value; }, x)) <= 1e-7);
}

TEST_CASE("joint density") {
  const auto c1 = make_row_case(3, 1, sp({1.5}));
  CHECK(std::abs(pdf_joint_minmax(c1, 0.5, 2.0).value) <= 1e-12);

  const auto c = make_row_case(2, 2, sp({1, 2}));
  const double a = 0.3, b = 2.0, h = 1e-4;
  auto g = [&](double x, double y) { return prob_gap(c, x, y).value; };
  const double mixed = -(g(a + h, b + h) - g(a + h, b - h) - g(a - h, b + h) + g(a - h, b - h)) / (4 * h * h);
  CHECK(std::abs(pdf_joint_minmax(c, a, b).value - mixed) <= 1e-6);
  CHECK(pdf_joint_minmax(c, a, b).value >= -1e-10);
}

TEST_CASE("hyp1f1_matrix_det matches the series") {
  const std::vector<double> x1{-1.3};
  CHECK(hyp1f1_matrix_det(3, x1).value() ==
        doctest::Approx(specfun::kummer_1f1(3, 4, -1.3).value).epsilon(1e-13));
  const std::vector<double> x{-0.4, -1.7, -2.9};
  const double series = schur::hyp1f1_multivar(4, 7, x, 120, 1e-15).value;
  CHECK(hyp1f1_matrix_det(4, x).value() == doctest::Approx(series).epsilon(1e-8));
  CHECK_THROWS_AS(hyp1f1_matrix_det(1, x), std::invalid_argument);
  const std::vector<double> same{-1.0, -1.0};
  CHECK_THROWS_AS(hyp1f1_matrix_det(3, same), std::invalid_argument);
}

TEST_CASE("reports carry diagnostics") {
  const auto c = make_row_case(3, 2, sp({1, 2}));
  const auto r = cdf_max(c, 1.0);
  CHECK(r.reliable);
  CHECK(r.warnings.empty());
  CHECK(r.abs_error_estimate >= 0);
  CHECK(r.abs_error_estimate < 1e-12);
  CHECK(r.precision_used == Precision::Double);

  const auto p = make_row_case(2, 2, validate_spectrum(std::vector<double>{1, 1}));
  CHECK(cdf_max(p, 1.0).has_warning("perturbed_spectrum"));
}

TEST_CASE("clustered spectrum: double flags, extended recovers") {
  const auto s = sp({1, 1 + 1e-4, 1 + 2e-4});
  const auto c = make_row_case(5, 3, s);
  const auto d = cdf_max(c, 1.0);
  CHECK(d.cancellation_digits > 12);
  CHECK(d.has_warning("cancellation"));
  CHECK_FALSE(d.reliable);
  const auto e = cdf_max(c, 1.0, {Precision::Extended});
  CHECK(e.precision_used == Precision::Extended);
  CHECK(e.reliable);
  const auto ser = schur::cdf_max_schur(1.0, {5, 3}, s);
  CHECK(rel(e.value, ser.value) <= 1e-8);
  const auto a = cdf_max(c, 1.0, {Precision::Auto});
  CHECK(a.precision_used == Precision::Extended);
  CHECK(a.has_warning("extended_rerun"));
  CHECK(a.value == e.value);
}

TEST_CASE("extended precision agrees with double on benign input") {
  const auto c = make_column_case(4, 2, sp({0.5, 1, 2, 3.5}));
  for (double lam : {0.2, 1.0, 3.0}) {
    CHECK(cdf_max(c, lam, {Precision::Extended}).value ==
          doctest::Approx(cdf_max(c, lam).value).epsilon(1e-12));
    CHECK(cdf_min(c, lam, {Precision::Extended}).value ==
          doctest::Approx(cdf_min(c, lam).value).epsilon(1e-12));
  }
}

TEST_CASE("limits and monotonicity") {
  const auto cases = {make_row_case(4, 2, sp({1, 3})), make_column_case(3, 2, sp({1, 2, 3})),
                      make_doubly_case(3, 3, sp({1, 2, 2.5}), sp({1, 1.5, 3}))};
  for (const auto& c : cases) {
    double prev_max = 0, prev_min = 1;
    for (int i = 1; i <= 60; ++i) {
      const double lam = 0.02 * std::pow(1.12, i);
      const double vmax = cdf_max(c, lam).value;
      CHECK(vmax >= prev_max - 1e-14);
      prev_max = vmax;
      if (std::holds_alternative<RowCorrelated>(c) || dimensions_of(c).m == dimensions_of(c).n) {
        const double vmin = cdf_min(c, lam).value;
        CHECK(vmin <= prev_min + 1e-14);
        prev_min = vmin;
      }
    }
  }
}
