#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sg/partition.hpp"

namespace sg {

struct ConvergenceFailure : std::runtime_error {
  explicit ConvergenceFailure(const std::string& what)
      : std::runtime_error(what) {}
};

// Counter-style generator: the stream for sample i depends only on
// (seed, i, attempt), so any scheduling of the sample loop sees identical
// draws. splitmix64 under the hood.
class SampleRng {
 public:
  SampleRng(std::uint64_t seed, std::uint64_t index, std::uint64_t attempt = 0);

  std::uint64_t next_u64();
  // Uniform on the open interval (0, 1).
  double next_uniform();
  // Standard normal via the polar method; draws come in cached pairs.
  double next_normal();

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// N x N matrix of i.i.d. standard normals, filled row by row.
Eigen::MatrixXd sample_matrix(unsigned n_dim, SampleRng& rng);

struct SpectrumSample {
  std::vector<std::complex<double>> eigenvalues;
  std::uint64_t source_seed = 0;
  std::uint64_t sample_index = 0;
};

// All eigenvalues, sorted by (real, imag). Enforces the real-matrix
// spectrum structure: closed under conjugation within 1e-8 and real trace;
// throws ConvergenceFailure when the solver fails or the structure check
// does not hold.
std::vector<std::complex<double>> eigenvalues_of(const Eigen::MatrixXd& m);

// Draws the matrix for (seed, index) and returns its spectrum, retrying
// with fresh draws on ConvergenceFailure. attempts_out, when given, gets
// the number of extra attempts that were needed.
SpectrumSample sample_spectrum(unsigned n_dim, std::uint64_t seed,
                               std::uint64_t index,
                               std::uint64_t* attempts_out = nullptr);

struct MomentEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
  std::string statistic_id;
};

struct McOptions {
  std::size_t n_samples = 100000;
  std::uint64_t seed = 1;
  int threads = 0;  // 0 = runtime default, still capped by the env var
  bool parallel = true;
};

// Worker count for a run: opts.threads when positive, else the OpenMP
// default, capped by SCHUR_GINIBRE_THREADS when that is set; 1 when the
// serial path is selected or OpenMP is absent.
int resolve_thread_count(const McOptions& opts);

// Core sampling loop: fill(i, row) writes `width` doubles for sample i into
// its own row of a buffer; every column is then reduced to mean and
// standard error (sample sd / sqrt(n)) in ascending index order. The
// parallel path only distributes the fill, so serial and parallel runs
// return bit-identical numbers.
std::vector<MomentEstimate> accumulate_statistics(
    std::size_t width, const std::function<void(std::size_t, double*)>& fill,
    const McOptions& opts);

struct SchurAverageEstimate {
  MomentEstimate real_part;
  MomentEstimate imag_part;
  std::uint64_t rejected = 0;  // extra eigensolver attempts across the run
};

// Mean of sigma_lambda over sampled spectra, via the determinant formula in
// complex floating point. The imaginary component is tracked separately; it
// must be statistically zero for conjugation-closed spectra.
SchurAverageEstimate estimate_schur_average(const Partition& lambda,
                                            unsigned n_dim,
                                            const McOptions& opts);

// Mean of Tr(H^power) from explicit matrix powers. No eigenvalues and no
// symmetric functions are involved, which makes this an independent route.
MomentEstimate estimate_trace_moment(unsigned power, unsigned n_dim,
                                     const McOptions& opts);

// Mean of det(I + x1 H) det(I + x2 H).
MomentEstimate estimate_charpoly_pair(double x1, double x2, unsigned n_dim,
                                      const McOptions& opts);

// Mean of prod_j det(I + x_j H) for any number of points.
MomentEstimate estimate_charpoly_product(const std::vector<double>& xs,
                                         unsigned n_dim,
                                         const McOptions& opts);

// Nodes and weights of the order-point Gauss-Legendre rule on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre_nodes(
    unsigned order);

// Expected density of complex eigenvalues at x + iy (one half-plane's
// worth): (2|y| / sqrt(2 pi)) e^{y^2 - x^2} erfc(sqrt(2) |y|)
// sum_{n=0}^{N-2} (x^2 + y^2)^n / n!. Vanishes on the real axis and is
// symmetric under z -> -z and z -> conj z.
double edelman_density(unsigned n_dim, double x, double y);

// Integral of the density over [x0,x1] x [y0,y1] by a product
// Gauss-Legendre rule.
double integrate_density(unsigned n_dim, double x0, double x1, double y0,
                         double y1, unsigned order = 16);

// Integral over the whole upper half plane (panel-composed quadrature out
// to where the Gaussian tails are negligible). The expected number of
// upper-half eigenvalues per matrix.
double integrate_density_half_plane(unsigned n_dim);

struct DensityOptions {
  unsigned bins_x = 8;
  unsigned bins_y = 4;
  double band = 0.1;    // excluded strip 0 <= y < band above the real axis
  double extent = 0.0;  // grid half-width / height; 0 = sqrt(N) + 1.5
};

struct DensityBin {
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  double expected = 0.0;
  std::uint64_t observed = 0;
  double z_score = 0.0;
};

struct DensityReport {
  unsigned dim = 0;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  double band = 0.0;
  double extent = 0.0;
  std::vector<DensityBin> bins;  // bins with expected count >= 10
  std::size_t pooled_bin_count = 0;  // small bins merged into one tally
  double pooled_expected = 0.0;
  std::uint64_t pooled_observed = 0;
  double pooled_z = 0.0;
  std::uint64_t upper_half_count = 0;  // all eigenvalues with Im > 1e-6
  double upper_half_expected = 0.0;
  double total_z = 0.0;
  double max_abs_z = 0.0;
  bool pass = false;
};

// Histograms upper-half-plane eigenvalues (Im > 1e-6) over a grid clear of
// the real axis and compares each bin against the quadrature of the
// expected density, in Poisson standard errors. Bins expecting fewer than
// 10 counts are pooled. Also checks the total upper-half count against the
// half-plane integral. Passes when every deviation stays below 5.
DensityReport density_histogram_check(unsigned n_dim,
                                      const DensityOptions& grid,
                                      const McOptions& opts);

}  // namespace sg
