#include "sg/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "sg/symfunc.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sg {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

SampleRng::SampleRng(std::uint64_t seed, std::uint64_t index,
                     std::uint64_t attempt) {
  state_ = mix64(mix64(mix64(seed) ^ index) ^ attempt);
}

std::uint64_t SampleRng::next_u64() {
  state_ += kGolden;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SampleRng::next_uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

double SampleRng::next_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double v1, v2, s;
  do {
    v1 = 2.0 * next_uniform() - 1.0;
    v2 = 2.0 * next_uniform() - 1.0;
    s = v1 * v1 + v2 * v2;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v2 * f;
  has_spare_ = true;
  return v1 * f;
}

Eigen::MatrixXd sample_matrix(unsigned n_dim, SampleRng& rng) {
  if (n_dim == 0) throw std::invalid_argument("dimension must be positive");
  Eigen::MatrixXd m(n_dim, n_dim);
  for (unsigned i = 0; i < n_dim; ++i)
    for (unsigned j = 0; j < n_dim; ++j) m(i, j) = rng.next_normal();
  return m;
}

std::vector<std::complex<double>> eigenvalues_of(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("eigenvalues need a square matrix");
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw ConvergenceFailure("eigenvalue iteration did not converge");

  const auto raw = solver.eigenvalues();
  std::vector<std::complex<double>> ev(raw.data(), raw.data() + raw.size());
  auto by_re_im = [](const std::complex<double>& a,
                     const std::complex<double>& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  };
  std::sort(ev.begin(), ev.end(), by_re_im);

  // Real matrices have conjugation-symmetric spectra; verify rather than
  // assume, since a borderline QR run can garble a pair.
  constexpr double tol = 1e-8;
  std::vector<std::complex<double>> conj(ev.size());
  std::transform(ev.begin(), ev.end(), conj.begin(),
                 [](const std::complex<double>& z) { return std::conj(z); });
  std::sort(conj.begin(), conj.end(), by_re_im);
  for (std::size_t i = 0; i < ev.size(); ++i)
    if (std::abs(ev[i] - conj[i]) > tol)
      throw ConvergenceFailure("spectrum not closed under conjugation");

  std::complex<double> sum = 0.0;
  for (const auto& z : ev) sum += z;
  if (std::abs(sum.imag()) > tol * static_cast<double>(ev.size()))
    throw ConvergenceFailure("spectrum sum has an imaginary part");
  return ev;
}

SpectrumSample sample_spectrum(unsigned n_dim, std::uint64_t seed,
                               std::uint64_t index,
                               std::uint64_t* attempts_out) {
  constexpr std::uint64_t kMaxAttempts = 64;
  for (std::uint64_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
    SampleRng rng(seed, index, attempt);
    Eigen::MatrixXd m = sample_matrix(n_dim, rng);
    try {
      SpectrumSample s{eigenvalues_of(m), seed, index};
      if (attempts_out) *attempts_out = attempt;
      return s;
    } catch (const ConvergenceFailure&) {
      // fresh draw for the same slot
    }
  }
  throw ConvergenceFailure("eigenvalue solver kept failing for one slot");
}

int resolve_thread_count(const McOptions& opts) {
  if (!opts.parallel) return 1;
#ifdef _OPENMP
  int n = opts.threads > 0 ? opts.threads : omp_get_max_threads();
#else
  int n = opts.threads > 0 ? opts.threads : 1;
#endif
  if (const char* env = std::getenv("SCHUR_GINIBRE_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0 && cap < n) n = static_cast<int>(cap);
  }
  return n < 1 ? 1 : n;
}

namespace {

// Runs fill over all sample indices into the row-major buffer. Each index
// owns one row, so the schedule cannot affect the stored values.
void fill_buffer(std::vector<double>& buffer, std::size_t n, std::size_t width,
                 const std::function<void(std::size_t, double*)>& fill,
                 int threads) {
  std::exception_ptr failure = nullptr;
#ifdef _OPENMP
  if (threads > 1) {
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      try {
        fill(static_cast<std::size_t>(i),
             buffer.data() + static_cast<std::size_t>(i) * width);
      } catch (...) {
#pragma omp critical(sg_fill_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
    return;
  }
#else
  (void)threads;
#endif
  for (std::size_t i = 0; i < n; ++i) fill(i, buffer.data() + i * width);
  (void)failure;
}

}  // namespace

std::vector<MomentEstimate> accumulate_statistics(
    std::size_t width, const std::function<void(std::size_t, double*)>& fill,
    const McOptions& opts) {
  if (width == 0 || opts.n_samples == 0)
    throw std::invalid_argument("need at least one column and one sample");
  const std::size_t n = opts.n_samples;
  std::vector<double> buffer(n * width, 0.0);
  fill_buffer(buffer, n, width, fill, resolve_thread_count(opts));

  std::vector<MomentEstimate> out(width);
  for (std::size_t c = 0; c < width; ++c) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += buffer[i * width + c];
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = buffer[i * width + c] - mean;
      ss += d * d;
    }
    const double var = n > 1 ? ss / static_cast<double>(n - 1) : 0.0;
    out[c].mean = mean;
    out[c].std_error = std::sqrt(var / static_cast<double>(n));
    out[c].n_samples = n;
  }
  return out;
}

SchurAverageEstimate estimate_schur_average(const Partition& lambda,
                                            unsigned n_dim,
                                            const McOptions& opts) {
  std::atomic<std::uint64_t> rejected{0};
  auto fill = [&](std::size_t i, double* row) {
    std::uint64_t attempts = 0;
    SpectrumSample s = sample_spectrum(n_dim, opts.seed, i, &attempts);
    if (attempts) rejected.fetch_add(attempts, std::memory_order_relaxed);
    std::complex<double> v = schur_jacobi_trudi(lambda, s.eigenvalues);
    row[0] = v.real();
    row[1] = v.imag();
  };
  std::vector<MomentEstimate> cols = accumulate_statistics(2, fill, opts);
  SchurAverageEstimate est;
  est.real_part = std::move(cols[0]);
  est.imag_part = std::move(cols[1]);
  const std::string id =
      "schur[" + lambda.to_string() + "] N=" + std::to_string(n_dim);
  est.real_part.statistic_id = id;
  est.imag_part.statistic_id = id + " (imag)";
  est.rejected = rejected.load();
  return est;
}

MomentEstimate estimate_trace_moment(unsigned power, unsigned n_dim,
                                     const McOptions& opts) {
  if (power == 0) throw std::invalid_argument("trace power must be >= 1");
  auto fill = [&](std::size_t i, double* row) {
    SampleRng rng(opts.seed, i);
    Eigen::MatrixXd h = sample_matrix(n_dim, rng);
    Eigen::MatrixXd p = h;
    for (unsigned k = 1; k < power; ++k) p = p * h;
    row[0] = p.trace();
  };
  MomentEstimate est = accumulate_statistics(1, fill, opts)[0];
  est.statistic_id =
      "trace^" + std::to_string(power) + " N=" + std::to_string(n_dim);
  return est;
}

MomentEstimate estimate_charpoly_pair(double x1, double x2, unsigned n_dim,
                                      const McOptions& opts) {
  MomentEstimate est = estimate_charpoly_product({x1, x2}, n_dim, opts);
  est.statistic_id = "charpoly(" + std::to_string(x1) + "," +
                     std::to_string(x2) + ") N=" + std::to_string(n_dim);
  return est;
}

MomentEstimate estimate_charpoly_product(const std::vector<double>& xs,
                                         unsigned n_dim,
                                         const McOptions& opts) {
  if (xs.empty())
    throw std::invalid_argument("charpoly product needs at least one point");
  auto fill = [&](std::size_t i, double* row) {
    SampleRng rng(opts.seed, i);
    Eigen::MatrixXd h = sample_matrix(n_dim, rng);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n_dim, n_dim);
    double prod = 1.0;
    for (double x : xs) prod *= (id + x * h).determinant();
    row[0] = prod;
  };
  MomentEstimate est = accumulate_statistics(1, fill, opts)[0];
  est.statistic_id =
      "charpoly-product[" + std::to_string(xs.size()) + " pts]" +
      " N=" + std::to_string(n_dim);
  return est;
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre_nodes(
    unsigned order) {
  if (order == 0) throw std::invalid_argument("quadrature order must be >= 1");
  std::vector<double> x(order), w(order);
  const unsigned half = (order + 1) / 2;
  for (unsigned i = 0; i < half; ++i) {
    // Chebyshev-angle initial guess, then Newton on P_order.
    double t = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double p0, p1, dp;
    for (int it = 0; it < 100; ++it) {
      p0 = 1.0;
      p1 = t;
      for (unsigned k = 2; k <= order; ++k) {
        double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (t * p1 - p0) / (t * t - 1.0);
      double step = p1 / dp;
      t -= step;
      if (std::abs(step) < 1e-15) break;
    }
    p0 = 1.0;
    p1 = t;
    for (unsigned k = 2; k <= order; ++k) {
      double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = order * (t * p1 - p0) / (t * t - 1.0);
    x[i] = -t;
    x[order - 1 - i] = t;
    w[i] = w[order - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
  if (order % 2 == 1) x[order / 2] = 0.0;
  return {std::move(x), std::move(w)};
}

double edelman_density(unsigned n_dim, double x, double y) {
  if (n_dim < 2) throw std::invalid_argument("density needs dimension >= 2");
  const double ay = std::abs(y);
  const double r2 = x * x + y * y;
  double series = 0.0, term = 1.0;
  for (unsigned n = 0; n + 2 <= n_dim; ++n) {
    series += term;
    term *= r2 / static_cast<double>(n + 1);
  }
  return 2.0 * ay / std::sqrt(2.0 * std::numbers::pi) *
         std::exp(y * y - x * x) * std::erfc(std::numbers::sqrt2 * ay) *
         series;
}

double integrate_density(unsigned n_dim, double x0, double x1, double y0,
                         double y1, unsigned order) {
  auto [t, w] = gauss_legendre_nodes(order);
  const double cx = 0.5 * (x0 + x1), hx = 0.5 * (x1 - x0);
  const double cy = 0.5 * (y0 + y1), hy = 0.5 * (y1 - y0);
  double total = 0.0;
  for (unsigned i = 0; i < order; ++i) {
    const double x = cx + hx * t[i];
    double row = 0.0;
    for (unsigned j = 0; j < order; ++j)
      row += w[j] * edelman_density(n_dim, x, cy + hy * t[j]);
    total += w[i] * row;
  }
  return total * hx * hy;
}

double integrate_density_half_plane(unsigned n_dim) {
  // The density decays like exp(-(|z| - sqrt(N))^2) past the spectral edge,
  // so a box a few units beyond sqrt(N) captures the mass to far below the
  // Monte Carlo resolution. Composite panels keep the rule order modest.
  const double reach = std::sqrt(static_cast<double>(n_dim)) + 6.0;
  const double panel = 0.5;
  const auto panels_y = static_cast<unsigned>(std::ceil(reach / panel));
  const auto panels_x = 2 * panels_y;
  double total = 0.0;
  for (unsigned j = 0; j < panels_y; ++j) {
    const double y0 = j * panel;
    const double y1 = std::min(reach, y0 + panel);
    for (unsigned i = 0; i < panels_x; ++i) {
      const double x0 = -reach + i * panel;
      total += integrate_density(n_dim, x0, std::min(reach, x0 + panel), y0,
                                 y1, 12);
    }
  }
  return total;
}

namespace {

double poisson_z(std::uint64_t observed, double expected) {
  if (expected <= 0.0)
    return observed == 0 ? 0.0 : static_cast<double>(observed);
  return (static_cast<double>(observed) - expected) / std::sqrt(expected);
}

}  // namespace

DensityReport density_histogram_check(unsigned n_dim,
                                      const DensityOptions& grid,
                                      const McOptions& opts) {
  if (n_dim < 2) throw std::invalid_argument("density needs dimension >= 2");
  if (grid.bins_x == 0 || grid.bins_y == 0)
    throw std::invalid_argument("need at least one bin per axis");
  const double extent =
      grid.extent > 0 ? grid.extent
                      : std::sqrt(static_cast<double>(n_dim)) + 1.5;
  if (!(grid.band >= 0.0) || grid.band >= extent)
    throw std::invalid_argument("band must sit inside the grid extent");

  const std::size_t nx = grid.bins_x, ny = grid.bins_y;
  const std::size_t nbins = nx * ny;
  const double dx = 2.0 * extent / static_cast<double>(nx);
  const double dy = (extent - grid.band) / static_cast<double>(ny);
  constexpr double kComplexThreshold = 1e-6;

  // Integer tallies merged by addition, so worker count and scheduling
  // cannot change the result.
  std::vector<std::uint64_t> counts(nbins + 1, 0);
  const int threads = resolve_thread_count(opts);
  const auto n = static_cast<long long>(opts.n_samples);
  std::exception_ptr failure = nullptr;

#ifdef _OPENMP
#pragma omp parallel num_threads(threads)
#endif
  {
    std::vector<std::uint64_t> local(nbins + 1, 0);
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 32) nowait
#endif
    for (long long i = 0; i < n; ++i) {
      try {
        SpectrumSample s = sample_spectrum(
            n_dim, opts.seed, static_cast<std::uint64_t>(i), nullptr);
        for (const auto& z : s.eigenvalues) {
          const double x = z.real(), y = z.imag();
          if (y <= kComplexThreshold) continue;
          ++local[nbins];
          if (y < grid.band || y >= extent || x < -extent || x >= extent)
            continue;
          const auto ix = static_cast<std::size_t>((x + extent) / dx);
          const auto iy = static_cast<std::size_t>((y - grid.band) / dy);
          if (ix < nx && iy < ny) ++local[iy * nx + ix];
        }
      } catch (...) {
#ifdef _OPENMP
#pragma omp critical(sg_density_failure)
#endif
        if (!failure) failure = std::current_exception();
      }
    }
#ifdef _OPENMP
#pragma omp critical(sg_density_merge)
#endif
    for (std::size_t b = 0; b <= nbins; ++b) counts[b] += local[b];
  }
  if (failure) std::rethrow_exception(failure);

  DensityReport report;
  report.dim = n_dim;
  report.n_samples = opts.n_samples;
  report.seed = opts.seed;
  report.band = grid.band;
  report.extent = extent;

  constexpr double kPoolBelow = 10.0;
  const auto scale = static_cast<double>(opts.n_samples);
  for (std::size_t iy = 0; iy < ny; ++iy) {
    for (std::size_t ix = 0; ix < nx; ++ix) {
      DensityBin bin;
      bin.x0 = -extent + static_cast<double>(ix) * dx;
      bin.x1 = bin.x0 + dx;
      bin.y0 = grid.band + static_cast<double>(iy) * dy;
      bin.y1 = bin.y0 + dy;
      bin.expected =
          scale * integrate_density(n_dim, bin.x0, bin.x1, bin.y0, bin.y1, 20);
      bin.observed = counts[iy * nx + ix];
      if (bin.expected < kPoolBelow) {
        ++report.pooled_bin_count;
        report.pooled_expected += bin.expected;
        report.pooled_observed += bin.observed;
      } else {
        bin.z_score = poisson_z(bin.observed, bin.expected);
        report.bins.push_back(bin);
      }
    }
  }
  report.pooled_z = poisson_z(report.pooled_observed, report.pooled_expected);

  report.upper_half_count = counts[nbins];
  report.upper_half_expected = scale * integrate_density_half_plane(n_dim);
  report.total_z = poisson_z(report.upper_half_count,
                             report.upper_half_expected);

  double worst = std::abs(report.total_z);
  for (const DensityBin& b : report.bins)
    worst = std::max(worst, std::abs(b.z_score));
  if (report.pooled_bin_count > 0)
    worst = std::max(worst, std::abs(report.pooled_z));
  report.max_abs_z = worst;
  report.pass = worst < 5.0;
  return report;
}

}  // namespace sg
