// Python bindings for the determinant engine, the Schur oracle and the
// Monte Carlo validator.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wishart/detform.hpp"
#include "wishart/model.hpp"
#include "wishart/montecarlo.hpp"
#include "wishart/schur.hpp"
#include "wishart/specfun.hpp"

namespace py = pybind11;
using namespace wishart;

namespace {

// std::variant gets a converting caster from stl.h; wrap it to keep one Python type.
struct Case {
  ModelCase c;
};

Statistic parse_stat(const std::string& s) {
  if (s == "max") return Statistic::Max;
  if (s == "min") return Statistic::Min;
  throw std::invalid_argument("stat must be 'max' or 'min'");
}

detform::EvalOptions options(const std::string& precision) {
  return {detform::parse_precision(precision)};
}

py::dict report_dict(const detform::EvalReport& r) {
  py::list warnings;
  for (const auto& w : r.warnings) warnings.append(py::make_tuple(w.tag, w.message));
  py::dict d;
  d["value"] = r.value;
  d["abs_error"] = r.abs_error_estimate;
  d["cancel_digits"] = r.cancellation_digits;
  d["reliable"] = r.reliable;
  d["precision"] = std::string(detform::precision_name(r.precision_used));
  d["warnings"] = warnings;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Extreme-eigenvalue distributions of correlated complex Wishart matrices";

  py::register_exception<detform::NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::class_<Spectrum>(m, "Spectrum")
      .def(py::init([](const std::vector<double>& v, double gap_tol) {
             return validate_spectrum(v, gap_tol);
           }),
           py::arg("values"), py::arg("gap_tol") = kDefaultGapTol)
      .def_property_readonly("values", &Spectrum::values)
      .def_property_readonly("perturbed", &Spectrum::perturbed)
      .def("__len__", &Spectrum::size)
      .def("__repr__", [](const Spectrum& s) {
        std::string out = "Spectrum([";
        for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + std::to_string(s[i]);
        return out + "])";
      });

  py::class_<Case>(m, "ModelCase")
      .def_property_readonly("kind", [](const Case& c) { return kind_name(c.c); })
      .def_property_readonly("n", [](const Case& c) { return dimensions_of(c.c).n; })
      .def_property_readonly("m", [](const Case& c) { return dimensions_of(c.c).m; });

  m.def("row_case", [](int n, int mm, const Spectrum& s) { return Case{make_row_case(n, mm, s)}; },
        py::arg("n"), py::arg("m"), py::arg("s"),
        "Row-correlated Z; s are the m eigenvalues of the inverse covariance.");
  m.def("column_case", [](int n, int mm, const Spectrum& s) { return Case{make_column_case(n, mm, s)}; },
        py::arg("n"), py::arg("m"), py::arg("s"),
        "Column-correlated Z; s are the n eigenvalues of the inverse covariance.");
  m.def("doubly_case",
        [](int n, int mm, const Spectrum& r, const Spectrum& s) {
          return Case{make_doubly_case(n, mm, r, s)};
        },
        py::arg("n"), py::arg("m"), py::arg("r"), py::arg("s"));

  m.def("cdf", [](const Case& c, const std::string& stat, double lam, const std::string& p) {
          return report_dict(detform::cdf(c.c, parse_stat(stat), lam, options(p)));
        },
        py::arg("case"), py::arg("stat"), py::arg("lam"), py::arg("precision") = "double");
  m.def("pdf", [](const Case& c, const std::string& stat, double lam, const std::string& p) {
          return report_dict(detform::pdf(c.c, parse_stat(stat), lam, options(p)));
        },
        py::arg("case"), py::arg("stat"), py::arg("lam"), py::arg("precision") = "double");
  m.def("prob_gap", [](const Case& c, double a, double b, const std::string& p) {
          return report_dict(detform::prob_gap(c.c, a, b, options(p)));
        },
        py::arg("case"), py::arg("a"), py::arg("b"), py::arg("precision") = "double");
  m.def("pdf_joint_minmax", [](const Case& c, double a, double b, const std::string& p) {
          return report_dict(detform::pdf_joint_minmax(c.c, a, b, options(p)));
        },
        py::arg("case"), py::arg("a"), py::arg("b"), py::arg("precision") = "double");
  m.def("cdf_min_tricomi", [](const Case& c, double lam, const std::string& p) {
          return report_dict(detform::cdf_min_row_tricomi(c.c, lam, options(p)));
        },
        py::arg("case"), py::arg("lam"), py::arg("precision") = "double");
  m.def("hyp1f1_matrix_det", [](int n, const std::vector<double>& x) {
          return detform::hyp1f1_matrix_det(n, x).value();
        },
        py::arg("n"), py::arg("x"));

  m.def("kummer_1f1", [](int a, int b, double x) { return specfun::kummer_1f1(a, b, x).value; });
  m.def("reg_lower_gamma", [](int a, double x) { return specfun::reg_lower_gamma(a, x).value; });
  m.def("reg_upper_gamma", [](int a, double x) { return specfun::reg_upper_gamma(a, x).value; });

  m.def("schur_poly", [](const std::vector<int>& parts, const std::vector<double>& x) {
          return schur::schur_poly(schur::make_partition(parts), x);
        },
        py::arg("partition"), py::arg("x"));
  m.def("hyp1f1_multivar",
        [](double a, double b, const std::vector<double>& x, int max_weight, double tail_tol) {
          const auto s = schur::hyp1f1_multivar(a, b, x, max_weight, tail_tol);
          return py::make_tuple(s.value, s.tail_bound, s.truncation_weight);
        },
        py::arg("a"), py::arg("b"), py::arg("x"), py::arg("max_weight") = 60,
        py::arg("tail_tol") = 0.0);
  m.def("cdf_max_schur", [](double lam, int n, int mm, const Spectrum& s) {
          return schur::cdf_max_schur(lam, make_dimensions(n, mm), s).value;
        },
        py::arg("lam"), py::arg("n"), py::arg("m"), py::arg("s"));
  m.def("cdf_min_schur", [](double lam, int n, int mm, const Spectrum& s) {
          return schur::cdf_min_schur(lam, make_dimensions(n, mm), s);
        },
        py::arg("lam"), py::arg("n"), py::arg("m"), py::arg("s"));

  m.def("empirical_cdf",
        [](const Case& c, const std::string& stat, const std::vector<double>& grid,
           std::int64_t samples, std::uint64_t seed, double confidence) {
          mc::MCConfig cfg;
          cfg.samples = samples;
          cfg.master_seed = seed;
          cfg.confidence = confidence;
          const Statistic st = parse_stat(stat);
          mc::EmpiricalCDF e;
          {
            py::gil_scoped_release release;
            e = mc::empirical_extreme_cdf(c.c, st, grid, cfg);
          }
          return py::make_tuple(e.fractions, e.dkw_epsilon);
        },
        py::arg("case"), py::arg("stat"), py::arg("grid"), py::arg("samples") = 100000,
        py::arg("seed") = 0, py::arg("confidence") = 0.99);
}
