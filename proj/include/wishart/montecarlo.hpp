#pragma once

// Stochastic validation: correlated complex Gaussian sampling, a Jacobi
// Hermitian eigensolver, empirical extreme-eigenvalue CDFs with DKW bands,
// and a Haar-unitary estimate of the HCIZ integral.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "wishart/matrix.hpp"
#include "wishart/model.hpp"

namespace wishart::mc {

using ComplexMatrix = Matrix<std::complex<double>>;

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k pairs with values[k]; empty unless requested
  int sweeps = 0;
};

/// Cyclic complex Jacobi. Iterates until the off-diagonal Frobenius mass is
/// below 1e-13 * ||H||_F. Throws std::invalid_argument if H is not square
/// or not Hermitian to 1e-10 relative.
HermitianEigen hermitian_eigen(const ComplexMatrix& h, bool want_vectors = false);

/// Eigenvalues only, ascending.
std::vector<double> hermitian_eigs(const ComplexMatrix& h);

struct MCConfig {
  std::int64_t samples = 100000;  // must be >= 100
  std::uint64_t master_seed = 0;
  double confidence = 0.99;       // in (0, 1)
  unsigned threads = 0;           // 0 = hardware concurrency; never changes results
};

void validate_config(const MCConfig& cfg);

/// Counter-based generator: the stream for (master_seed, stream_id) is
/// mix(key + k * golden) for k = 1, 2, ... with key derived from both
/// inputs only, so draws never depend on scheduling.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t master_seed, std::uint64_t stream_id);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()();

  /// Uniform on (0, 1), 53 random bits.
  double uniform();
  /// Standard complex normal: real and imaginary parts N(0, 1/2), E|z|^2 = 1.
  std::complex<double> complex_normal();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Z = L2 G L1^dagger with diagonal Cholesky factors built from the case
/// spectra (Sigma = diag(1/s_j)); deterministic in (case, index, seed).
ComplexMatrix sample_matrix(const ModelCase& c, std::uint64_t sample_index,
                            std::uint64_t master_seed);

/// Extreme eigenvalue of Z^dagger Z for every sample index 0..N-1, in index order.
std::vector<double> sample_extremes(const ModelCase& c, Statistic stat, const MCConfig& cfg);

struct EmpiricalCDF {
  std::vector<double> grid;
  /// Max: fraction with lambda_max <= grid[i]. Min: fraction with lambda_min >= grid[i].
  std::vector<double> fractions;
  double dkw_epsilon = 0.0;
  std::int64_t samples = 0;
  Statistic stat = Statistic::Max;
};

/// sqrt(ln(2 / (1 - confidence)) / (2N)).
double dkw_epsilon(std::int64_t samples, double confidence);

EmpiricalCDF empirical_cdf_from_samples(std::span<const double> extremes, Statistic stat,
                                        std::span<const double> grid, double confidence);

EmpiricalCDF empirical_extreme_cdf(const ModelCase& c, Statistic stat,
                                   std::span<const double> grid, const MCConfig& cfg);

/// Haar-distributed n x n unitary: modified Gram-Schmidt of a complex
/// Ginibre matrix (R has a positive diagonal, which fixes the phases).
ComplexMatrix haar_unitary(int n, CounterRng& rng);

struct HaarEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Mean of exp(-lambda Tr(R V^dagger S V)) over Haar V with
/// R = diag(r), S = diag(s); r and s of equal length.
HaarEstimate haar_hciz_estimate(double lambda, const Spectrum& r, const Spectrum& s,
                                const MCConfig& cfg);

}  // namespace wishart::mc
