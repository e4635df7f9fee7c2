#pragma once

// Batch command-line surface. Subcommands: cdf, pdf, gap, crosscheck, validate.
//
// --spectrum, --r and --s take eigenvalues of the INVERSE covariance
// (Sigma^{-1}), not of Sigma. Pass covariance matrices with --covariance,
// --cov-r, --cov-s to have them inverted for you.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wishart/detform.hpp"
#include "wishart/model.hpp"

namespace wishart::cli {

enum ExitCode : int {
  kSuccess = 0,
  kArgumentError = 2,
  kNumericalFailure = 3,
  kValidationFailure = 4,
};

struct GridSpec {
  double start = 0.1;
  double stop = 10.0;
  int points = 50;
  bool log_spacing = true;
};

/// "start:stop:points[:log|linear]"; log is the default spacing.
GridSpec parse_grid(const std::string& text);
std::vector<double> grid_points(const GridSpec& g);

struct CaseSpec {
  std::string kind;  // row | column | double
  int n = 0;
  int m = 0;
  std::vector<double> spectrum;  // row/column
  std::vector<double> r;         // double, length m
  std::vector<double> s;         // double, length n
  std::string covariance;        // file, row/column
  std::string cov_r;             // file, double
  std::string cov_s;             // file, double
};

struct JobSpec {
  std::string command;
  CaseSpec model;
  std::string stat = "max";  // max | min | joint
  std::optional<GridSpec> grid;
  std::optional<GridSpec> a_grid;
  std::optional<GridSpec> b_grid;
  std::string format = "csv";
  std::string output;  // empty = standard output
  detform::Precision precision = detform::Precision::Double;
  bool strict = false;
  std::int64_t samples = 200000;
  std::uint64_t seed = 0;
  double confidence = 0.99;
  unsigned threads = 0;
};

/// Builds the model case, reading covariance files when given.
ModelCase build_case(const CaseSpec& c);

/// Parses argv (argv[0] is the program name) and runs the job.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wishart::cli
