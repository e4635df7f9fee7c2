#include "wishart/cli.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "parallel.hpp"
#include "wishart/montecarlo.hpp"
#include "wishart/schur.hpp"

namespace wishart::cli {
namespace {

using json = nlohmann::json;

class ArgError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

constexpr double kCrosscheckThreshold = 1e-8;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size() && item.find_first_not_of(" \t", used) != std::string::npos)
        throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ArgError(std::string("cannot parse ") + what + " entry '" + item + "'");
    }
  }
  if (out.empty()) throw ArgError(std::string(what) + " is empty");
  return out;
}

GridSpec grid_from_json(const json& j) {
  if (j.is_string()) return parse_grid(j.get<std::string>());
  GridSpec g;
  g.start = j.at("start").get<double>();
  g.stop = j.at("stop").get<double>();
  g.points = j.at("points").get<int>();
  g.log_spacing = j.value("spacing", std::string("log")) != "linear";
  if (!(g.start > 0) || g.stop < g.start || g.points < 1)
    throw ArgError("grid needs start > 0, stop >= start and points >= 1");
  return g;
}

json grid_to_json(const GridSpec& g) {
  return {{"start", g.start},
          {"stop", g.stop},
          {"points", g.points},
          {"spacing", g.log_spacing ? "log" : "linear"}};
}

json job_to_json(const JobSpec& js) {
  json c = {{"kind", js.model.kind}, {"n", js.model.n}, {"m", js.model.m}};
  if (!js.model.spectrum.empty()) c["spectrum"] = js.model.spectrum;
  if (!js.model.r.empty()) c["r"] = js.model.r;
  if (!js.model.s.empty()) c["s"] = js.model.s;
  if (!js.model.covariance.empty()) c["covariance"] = js.model.covariance;
  if (!js.model.cov_r.empty()) c["cov_r"] = js.model.cov_r;
  if (!js.model.cov_s.empty()) c["cov_s"] = js.model.cov_s;
  json j = {{"command", js.command},
            {"case", c},
            {"stat", js.stat},
            {"output", {{"format", js.format}, {"path", js.output}}},
            {"precision", std::string(detform::precision_name(js.precision))},
            {"strict", js.strict}};
  if (js.grid) j["grid"] = grid_to_json(*js.grid);
  if (js.a_grid) j["a"] = grid_to_json(*js.a_grid);
  if (js.b_grid) j["b"] = grid_to_json(*js.b_grid);
  if (js.command == "validate")
    j["mc"] = {{"samples", js.samples}, {"seed", js.seed}, {"confidence", js.confidence}};
  return j;
}

void apply_config(const json& j, JobSpec& js) {
  if (j.contains("case")) {
    const json& c = j["case"];
    js.model.kind = c.value("kind", js.model.kind);
    js.model.n = c.value("n", js.model.n);
    js.model.m = c.value("m", js.model.m);
    js.model.spectrum = c.value("spectrum", js.model.spectrum);
    js.model.r = c.value("r", js.model.r);
    js.model.s = c.value("s", js.model.s);
    js.model.covariance = c.value("covariance", js.model.covariance);
    js.model.cov_r = c.value("cov_r", js.model.cov_r);
    js.model.cov_s = c.value("cov_s", js.model.cov_s);
  }
  js.stat = j.value("stat", js.stat);
  if (j.contains("grid")) js.grid = grid_from_json(j["grid"]);
  if (j.contains("a")) js.a_grid = grid_from_json(j["a"]);
  if (j.contains("b")) js.b_grid = grid_from_json(j["b"]);
  if (j.contains("output")) {
    js.format = j["output"].value("format", js.format);
    js.output = j["output"].value("path", js.output);
  }
  if (j.contains("precision")) js.precision = detform::parse_precision(j["precision"].get<std::string>());
  js.strict = j.value("strict", js.strict);
  if (j.contains("mc")) {
    js.samples = j["mc"].value("samples", js.samples);
    js.seed = j["mc"].value("seed", js.seed);
    js.confidence = j["mc"].value("confidence", js.confidence);
  }
  js.threads = j.value("threads", js.threads);
}

CovarianceMatrix read_covariance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgError("cannot open covariance file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ArgError("covariance file '" + path + "': " + e.what());
  }
  if (!j.contains("hermitian") || !j["hermitian"].is_array())
    throw ArgError("covariance file '" + path + "' needs a \"hermitian\" array of rows");
  const json& rows = j["hermitian"];
  const std::size_t n = rows.size();
  CovarianceMatrix c{Matrix<std::complex<double>>(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n)
      throw ArgError("covariance file '" + path + "': matrix must be square");
    for (std::size_t k = 0; k < n; ++k) {
      const json& e = rows[i][k];
      if (e.is_number()) {
        c.entries(i, k) = e.get<double>();
      } else {
        c.entries(i, k) = {e.at("re").get<double>(), e.value("im", 0.0)};
      }
    }
  }
  return c;
}

Spectrum spectrum_or_covariance(const std::vector<double>& values, const std::string& file,
                                const char* what) {
  if (!file.empty()) {
    if (!values.empty())
      throw ArgError(std::string("give either ") + what + " values or a covariance file, not both");
    return spectrum_from_covariance(read_covariance(file));
  }
  if (values.empty()) throw ArgError(std::string("missing ") + what);
  return validate_spectrum(values);
}

Statistic max_or_min(const std::string& stat) {
  if (stat == "max") return Statistic::Max;
  if (stat == "min") return Statistic::Min;
  throw ArgError("--stat must be max or min here (got '" + stat + "')");
}

std::string warning_tags(const detform::EvalReport& r) {
  std::string out;
  for (const auto& w : r.warnings) {
    if (!out.empty()) out += ';';
    out += w.tag;
  }
  return out;
}

json warnings_json(const detform::EvalReport& r) {
  json a = json::array();
  for (const auto& w : r.warnings) a.push_back({{"tag", w.tag}, {"message", w.message}});
  return a;
}

void emit(const JobSpec& js, const std::string& text, std::ostream& out) {
  if (js.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(js.output, std::ios::binary);
  if (!f) throw ArgError("cannot open output file '" + js.output + "'");
  f << text;
}

std::string render_json(const JobSpec& js, json body) {
  body["job"] = job_to_json(js);
  return body.dump(2) + "\n";
}

bool any_cancellation(const std::vector<detform::EvalReport>& reports) {
  return std::any_of(reports.begin(), reports.end(),
                     [](const auto& r) { return r.has_warning("cancellation"); });
}

// ---- subcommands ----------------------------------------------------------

int run_curve(const JobSpec& js, std::ostream& out) {
  const ModelCase mc = build_case(js.model);
  const detform::EvalOptions opts{js.precision};
  const bool density = js.command == "pdf";

  if (js.stat == "joint") {
    if (!density) throw ArgError("--stat joint is only available for pdf");
    if (!js.a_grid || !js.b_grid) throw ArgError("--stat joint needs --a and --b grids");
  }
  if (js.command == "gap" || js.stat == "joint") {
    if (!js.a_grid || !js.b_grid) throw ArgError("needs --a and --b grids");
    std::vector<std::pair<double, double>> pairs;
    for (double a : grid_points(*js.a_grid))
      for (double b : grid_points(*js.b_grid))
        if (a < b) pairs.emplace_back(a, b);
    std::vector<detform::EvalReport> reports(pairs.size());
    detail::parallel_for(pairs.size(), js.threads, [&](std::size_t i) {
      reports[i] = density ? detform::pdf_joint_minmax(mc, pairs[i].first, pairs[i].second, opts)
                           : detform::prob_gap(mc, pairs[i].first, pairs[i].second, opts);
    });
    if (js.format == "json") {
      json rows = json::array();
      for (std::size_t i = 0; i < pairs.size(); ++i)
        rows.push_back({{"a", pairs[i].first},
                        {"b", pairs[i].second},
                        {"value", reports[i].value},
                        {"abs_error", reports[i].abs_error_estimate},
                        {"cancel_digits", reports[i].cancellation_digits},
                        {"warnings", warnings_json(reports[i])}});
      emit(js, render_json(js, {{"rows", rows}}), out);
    } else {
      std::string text = "a,b,value,abs_error,cancel_digits,warnings\n";
      for (std::size_t i = 0; i < pairs.size(); ++i)
        text += fmt(pairs[i].first) + ',' + fmt(pairs[i].second) + ',' + fmt(reports[i].value) +
                ',' + fmt(reports[i].abs_error_estimate) + ',' +
                fmt(reports[i].cancellation_digits) + ',' + warning_tags(reports[i]) + '\n';
      emit(js, text, out);
    }
    return js.strict && any_cancellation(reports) ? kNumericalFailure : kSuccess;
  }

  const Statistic stat = max_or_min(js.stat);
  if (!js.grid) throw ArgError("--grid is required");
  const auto lambdas = grid_points(*js.grid);
  std::vector<detform::EvalReport> reports(lambdas.size());
  detail::parallel_for(lambdas.size(), js.threads, [&](std::size_t i) {
    reports[i] = density ? detform::pdf(mc, stat, lambdas[i], opts)
                         : detform::cdf(mc, stat, lambdas[i], opts);
  });
  if (js.format == "json") {
    json rows = json::array();
    for (std::size_t i = 0; i < lambdas.size(); ++i)
      rows.push_back({{"lambda", lambdas[i]},
                      {"value", reports[i].value},
                      {"abs_error", reports[i].abs_error_estimate},
                      {"cancel_digits", reports[i].cancellation_digits},
                      {"warnings", warnings_json(reports[i])}});
    emit(js, render_json(js, {{"rows", rows}}), out);
  } else {
    std::string text = "lambda,value,abs_error,cancel_digits,warnings\n";
    for (std::size_t i = 0; i < lambdas.size(); ++i)
      text += fmt(lambdas[i]) + ',' + fmt(reports[i].value) + ',' +
              fmt(reports[i].abs_error_estimate) + ',' + fmt(reports[i].cancellation_digits) +
              ',' + warning_tags(reports[i]) + '\n';
    emit(js, text, out);
  }
  return js.strict && any_cancellation(reports) ? kNumericalFailure : kSuccess;
}

int run_crosscheck(const JobSpec& js, std::ostream& out) {
  const ModelCase mc = build_case(js.model);
  const auto* row = std::get_if<RowCorrelated>(&mc);
  if (!row) throw ArgError("crosscheck supports the row-correlated case only");
  if (row->dims.n > 8 || row->dims.m > 4)
    throw ArgError("crosscheck is meant for small sizes (n <= 8, m <= 4)");
  std::vector<Statistic> stats{Statistic::Max, Statistic::Min};
  if (!js.stat.empty()) stats = {max_or_min(js.stat)};

  std::vector<double> lambdas;
  if (js.grid) {
    lambdas = grid_points(*js.grid);
  } else {
    const double top = row->s.values().back();
    lambdas = grid_points({0.25 / top, 8.0 / top, 12, false});
  }

  struct Line {
    double lambda;
    Statistic stat;
    double det, series, rel;
    bool controlled;
  };
  std::vector<Line> lines(lambdas.size() * stats.size());
  const detform::EvalOptions opts{js.precision};
  detail::parallel_for(lines.size(), js.threads, [&](std::size_t i) {
    const double lam = lambdas[i / stats.size()];
    const Statistic st = stats[i % stats.size()];
    const double det = detform::cdf(mc, st, lam, opts).value;
    double ser;
    bool controlled = true;
    if (st == Statistic::Max) {
      const auto sv = schur::cdf_max_schur(lam, row->dims, row->s);
      ser = sv.value;
      controlled = sv.tail_controlled;
    } else {
      ser = schur::cdf_min_schur(lam, row->dims, row->s);
    }
    const double rel = std::abs(det - ser) / std::max(std::abs(ser), 1e-300);
    lines[i] = {lam, st, det, ser, rel, controlled};
  });

  double worst = 0;
  bool all_controlled = true;
  for (const auto& l : lines) {
    worst = std::max(worst, l.rel);
    all_controlled = all_controlled && l.controlled;
  }
  const bool pass = worst <= kCrosscheckThreshold && all_controlled;
  if (js.format == "json") {
    json rows = json::array();
    for (const auto& l : lines)
      rows.push_back({{"lambda", l.lambda},
                      {"stat", l.stat == Statistic::Max ? "max" : "min"},
                      {"determinant", l.det},
                      {"series", l.series},
                      {"rel_diff", l.rel},
                      {"tail_controlled", l.controlled}});
    emit(js,
         render_json(js, {{"rows", rows},
                          {"max_rel_discrepancy", worst},
                          {"threshold", kCrosscheckThreshold},
                          {"pass", pass}}),
         out);
  } else {
    std::string text = "lambda,stat,determinant,series,rel_diff\n";
    for (const auto& l : lines)
      text += fmt(l.lambda) + ',' + (l.stat == Statistic::Max ? "max" : "min") + ',' +
              fmt(l.det) + ',' + fmt(l.series) + ',' + fmt(l.rel) + '\n';
    text += "# max relative discrepancy " + fmt(worst) + " (threshold " +
            fmt(kCrosscheckThreshold) + ")" + (all_controlled ? "" : ", series tail uncontrolled") +
            '\n';
    emit(js, text, out);
  }
  return pass ? kSuccess : kValidationFailure;
}

int run_validate(const JobSpec& js, std::ostream& out) {
  const ModelCase mc = build_case(js.model);
  const Statistic stat = max_or_min(js.stat.empty() ? "max" : js.stat);
  if (stat == Statistic::Min) {
    // fail early with the restriction instead of after sampling
    if (const auto* d = std::get_if<DoublyCorrelated>(&mc); d && d->dims.m != d->dims.n)
      detform::cdf_min(mc, 1.0);
  }
  mc::MCConfig cfg;
  cfg.samples = js.samples;
  cfg.master_seed = js.seed;
  cfg.confidence = js.confidence;
  cfg.threads = js.threads;
  mc::validate_config(cfg);

  std::vector<double> extremes = mc::sample_extremes(mc, stat, cfg);
  std::vector<double> grid;
  if (js.grid) {
    grid = grid_points(*js.grid);
  } else {
    std::vector<double> sorted = extremes;
    std::sort(sorted.begin(), sorted.end());
    auto quantile = [&](double p) {
      const auto idx = static_cast<std::size_t>(p * static_cast<double>(sorted.size() - 1));
      return sorted[idx];
    };
    grid = grid_points({quantile(0.01), quantile(0.99), 30, false});
  }
  const auto emp = mc::empirical_cdf_from_samples(extremes, stat, grid, js.confidence);

  std::vector<detform::EvalReport> reports(grid.size());
  const detform::EvalOptions opts{js.precision};
  detail::parallel_for(grid.size(), js.threads,
                       [&](std::size_t i) { reports[i] = detform::cdf(mc, stat, grid[i], opts); });

  std::vector<double> margins(grid.size());
  int inside = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    margins[i] = emp.dkw_epsilon - std::abs(reports[i].value - emp.fractions[i]);
    if (margins[i] >= 0) ++inside;
  }
  const bool pass = inside == static_cast<int>(grid.size());

  if (js.format == "json") {
    json rows = json::array();
    for (std::size_t i = 0; i < grid.size(); ++i)
      rows.push_back({{"lambda", grid[i]},
                      {"analytic", reports[i].value},
                      {"empirical", emp.fractions[i]},
                      {"margin", margins[i]},
                      {"warnings", warnings_json(reports[i])}});
    emit(js,
         render_json(js, {{"rows", rows},
                          {"dkw_epsilon", emp.dkw_epsilon},
                          {"samples", emp.samples},
                          {"inside", inside},
                          {"pass", pass}}),
         out);
  } else {
    std::string text = "lambda,analytic,empirical,margin\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
      text += fmt(grid[i]) + ',' + fmt(reports[i].value) + ',' + fmt(emp.fractions[i]) + ',' +
              fmt(margins[i]) + '\n';
    text += "# dkw epsilon " + fmt(emp.dkw_epsilon) + ", samples " + std::to_string(emp.samples) +
            ", inside band at " + std::to_string(inside) + "/" + std::to_string(grid.size()) +
            " points\n";
    emit(js, text, out);
  }
  if (js.strict && any_cancellation(reports)) return kNumericalFailure;
  return pass ? kSuccess : kValidationFailure;
}

struct Flags {
  std::string config;
  std::string kind;
  std::optional<int> n, m;
  std::string spectrum, r, s, covariance, cov_r, cov_s;
  std::string stat, grid, a, b, format, output, precision;
  bool strict = false;
  std::optional<std::int64_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<double> confidence;
  std::optional<unsigned> threads;
};

void add_options(CLI::App* sub, Flags& f, bool pair_grids, bool monte_carlo) {
  sub->add_option("--config", f.config, "JSON job file; flags given on the command line win");
  sub->add_option("--case", f.kind, "row | column | double");
  sub->add_option("--n", f.n, "rows of Z (samples)");
  sub->add_option("--m", f.m, "columns of Z (variables), m <= n");
  sub->add_option("--spectrum", f.spectrum,
                  "comma-separated eigenvalues of the INVERSE covariance (row: m values, "
                  "column: n values)");
  sub->add_option("--covariance", f.covariance,
                  "covariance matrix file {\"hermitian\": [[{\"re\":..,\"im\":..},..],..]}, "
                  "alternative to --spectrum");
  sub->add_option("--r", f.r, "double case: m inverse-covariance eigenvalues (row side)");
  sub->add_option("--s", f.s, "double case: n inverse-covariance eigenvalues (column side)");
  sub->add_option("--cov-r", f.cov_r, "double case: covariance file for the r side");
  sub->add_option("--cov-s", f.cov_s, "double case: covariance file for the s side");
  sub->add_option("--stat", f.stat, pair_grids ? "max | min | joint" : "max | min");
  sub->add_option("--grid", f.grid, "start:stop:points[:log|linear], log by default");
  if (pair_grids) {
    sub->add_option("--a", f.a, "grid for the lower edge a");
    sub->add_option("--b", f.b, "grid for the upper edge b");
  }
  sub->add_option("--format", f.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--output", f.output, "output file (default: standard output)");
  sub->add_option("--precision", f.precision,
                  "double | extended | auto (default from WISHART_PRECISION, else double)");
  sub->add_flag("--strict", f.strict, "exit 3 when any value carries a cancellation warning");
  sub->add_option("--threads", f.threads, "worker threads, 0 = all cores; never changes output");
  if (monte_carlo) {
    sub->add_option("--samples", f.samples, "Monte Carlo sample count (default 200000)");
    sub->add_option("--seed", f.seed, "master seed (default 0)");
    sub->add_option("--confidence", f.confidence, "DKW band confidence (default 0.99)");
  }
}

JobSpec assemble(const std::string& command, const Flags& f) {
  JobSpec js;
  js.command = command;
  js.stat.clear();
  if (const char* env = std::getenv("WISHART_PRECISION"); env && *env)
    js.precision = detform::parse_precision(env);
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw ArgError("cannot open config file '" + f.config + "'");
    try {
      apply_config(json::parse(in), js);
    } catch (const json::exception& e) {
      throw ArgError("config file '" + f.config + "': " + e.what());
    }
  }
  if (!f.kind.empty()) js.model.kind = f.kind;
  if (f.n) js.model.n = *f.n;
  if (f.m) js.model.m = *f.m;
  if (!f.spectrum.empty()) js.model.spectrum = parse_list(f.spectrum, "--spectrum");
  if (!f.r.empty()) js.model.r = parse_list(f.r, "--r");
  if (!f.s.empty()) js.model.s = parse_list(f.s, "--s");
  if (!f.covariance.empty()) js.model.covariance = f.covariance;
  if (!f.cov_r.empty()) js.model.cov_r = f.cov_r;
  if (!f.cov_s.empty()) js.model.cov_s = f.cov_s;
  if (!f.stat.empty()) js.stat = f.stat;
  if (!f.grid.empty()) js.grid = parse_grid(f.grid);
  if (!f.a.empty()) js.a_grid = parse_grid(f.a);
  if (!f.b.empty()) js.b_grid = parse_grid(f.b);
  if (!f.format.empty()) js.format = f.format;
  if (!f.output.empty()) js.output = f.output;
  if (!f.precision.empty()) js.precision = detform::parse_precision(f.precision);
  if (f.strict) js.strict = true;
  if (f.samples) js.samples = *f.samples;
  if (f.seed) js.seed = *f.seed;
  if (f.confidence) js.confidence = *f.confidence;
  if (f.threads) js.threads = *f.threads;

  if (js.format != "csv" && js.format != "json") throw ArgError("--format must be csv or json");
  if (js.stat.empty() && command != "crosscheck") js.stat = "max";
  if (!js.stat.empty() && js.stat != "max" && js.stat != "min" && js.stat != "joint")
    throw ArgError("--stat must be max, min or joint");
  if (js.model.kind.empty()) throw ArgError("--case is required");
  return js;
}

int dispatch(const JobSpec& js, std::ostream& out) {
  if (js.command == "crosscheck") return run_crosscheck(js, out);
  if (js.command == "validate") return run_validate(js, out);
  return run_curve(js, out);
}

}  // namespace

GridSpec parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3 && parts.size() != 4)
    throw ArgError("grid must look like start:stop:points[:log|linear], got '" + text + "'");
  GridSpec g;
  try {
    g.start = std::stod(parts[0]);
    g.stop = std::stod(parts[1]);
    g.points = std::stoi(parts[2]);
  } catch (const std::exception&) {
    throw ArgError("cannot parse grid '" + text + "'");
  }
  if (parts.size() == 4) {
    if (parts[3] == "log") {
      g.log_spacing = true;
    } else if (parts[3] == "linear") {
      g.log_spacing = false;
    } else {
      throw ArgError("grid spacing must be log or linear, got '" + parts[3] + "'");
    }
  }
  if (!(g.start > 0) || !(g.stop >= g.start) || !std::isfinite(g.stop) || g.points < 1)
    throw ArgError("grid needs 0 < start <= stop and points >= 1, got '" + text + "'");
  return g;
}

std::vector<double> grid_points(const GridSpec& g) {
  std::vector<double> out(static_cast<std::size_t>(g.points));
  if (g.points == 1) {
    out[0] = g.start;
    return out;
  }
  for (int i = 0; i < g.points; ++i) {
    const double t = static_cast<double>(i) / (g.points - 1);
    out[i] = g.log_spacing ? std::exp(std::log(g.start) + t * (std::log(g.stop) - std::log(g.start)))
                           : g.start + t * (g.stop - g.start);
  }
  out.front() = g.start;
  out.back() = g.stop;
  return out;
}

ModelCase build_case(const CaseSpec& c) {
  if (c.kind == "row")
    return make_row_case(c.n, c.m, spectrum_or_covariance(c.spectrum, c.covariance, "--spectrum"));
  if (c.kind == "column")
    return make_column_case(c.n, c.m,
                            spectrum_or_covariance(c.spectrum, c.covariance, "--spectrum"));
  if (c.kind == "double")
    return make_doubly_case(c.n, c.m, spectrum_or_covariance(c.r, c.cov_r, "--r"),
                            spectrum_or_covariance(c.s, c.cov_s, "--s"));
  throw ArgError("unknown case kind '" + c.kind + "' (expected row, column or double)");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extreme-eigenvalue distributions of correlated complex Wishart matrices"};
  app.require_subcommand(1);
  Flags f;
  struct Sub {
    const char* name;
    const char* help;
    bool pairs;
    bool mc;
  };
  const Sub subs[] = {
      {"cdf", "table of Pr(lambda_max <= x) or Pr(lambda_min >= x) over a grid", false, false},
      {"pdf", "density table; --stat joint gives the (lambda_min, lambda_max) density", true, false},
      {"gap", "Pr(a <= lambda_min, lambda_max <= b) over an (a, b) grid", true, false},
      {"crosscheck", "determinant formulas against the Schur series (row case)", false, false},
      {"validate", "analytic CDF against a Monte Carlo DKW band", false, true},
  };
  for (const auto& s : subs) add_options(app.add_subcommand(s.name, s.help), f, s.pairs, s.mc);

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kArgumentError;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    return dispatch(assemble(command, f), out);
  } catch (const ArgError& e) {
    err << "error: " << e.what() << '\n';
    return kArgumentError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kArgumentError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kArgumentError;
  } catch (const detform::NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace wishart::cli
