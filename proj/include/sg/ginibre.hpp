#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "sg/partition.hpp"
#include "sg/pfaffian.hpp"
#include "sg/rational.hpp"
#include "sg/symfunc.hpp"

namespace sg {

struct InvalidPartition : std::invalid_argument {
  explicit InvalidPartition(const std::string& what)
      : std::invalid_argument(what) {}
};

// Exact carrier for rational * sqrt(2)^p * sqrt(pi)^q values. Even powers
// of sqrt(2) fold into the rational part; powers of sqrt(pi) cannot fold
// and stay symbolic. Moment ratios must come out with both exponents zero,
// which turns the irrational cancellation into a structural check.
struct RadicalScalar {
  Rational coeff{1};
  int sqrt2_pow = 0;
  int sqrtpi_pow = 0;

  static RadicalScalar one() { return RadicalScalar{}; }

  void normalize() {
    while (sqrt2_pow >= 2) {
      coeff *= 2;
      sqrt2_pow -= 2;
    }
    while (sqrt2_pow <= -2) {
      coeff /= 2;
      sqrt2_pow += 2;
    }
  }

  bool is_rational() const { return sqrt2_pow == 0 && sqrtpi_pow == 0; }

  RadicalScalar& operator*=(const RadicalScalar& o) {
    coeff *= o.coeff;
    sqrt2_pow += o.sqrt2_pow;
    sqrtpi_pow += o.sqrtpi_pow;
    normalize();
    return *this;
  }
  RadicalScalar& operator/=(const RadicalScalar& o) {
    coeff /= o.coeff;
    sqrt2_pow -= o.sqrt2_pow;
    sqrtpi_pow -= o.sqrtpi_pow;
    normalize();
    return *this;
  }
  friend RadicalScalar operator*(RadicalScalar a, const RadicalScalar& b) {
    a *= b;
    return a;
  }
  friend RadicalScalar operator/(RadicalScalar a, const RadicalScalar& b) {
    a /= b;
    return a;
  }

  double to_double() const;
};

// a_k = 2^{k/2} Gamma(k/2): for even k the integer 2^{k/2} (k/2 - 1)!, for
// odd k the integer (k-2)!! times sqrt(2 pi).
RadicalScalar a_coefficient(unsigned k);
double a_coefficient_double(unsigned k);

// The moment matrix A_{l,m} = a_l (eps^{-1})_{l,m} a_m in floating point,
// for the numeric identities (inverse, determinant, Pfaffian square).
SkewMatrix<double> build_A(std::size_t dim);

// Its inverse from the closed pattern a_k^{-1} eps_{k,l} a_l^{-1}.
SkewMatrix<double> build_A_inverse(std::size_t dim);

// Skew polynomial kernel (z1 - z2)/(2 sqrt(2 pi)) * sum_{n<=N-2} (z1 z2)^n/n!.
std::complex<double> kernel_kn(unsigned n_dim, std::complex<double> z1,
                               std::complex<double> z2);

// Coefficient matrix c[k][l] of z1^k z2^l (0-based) for the kernel, from
// the truncated exponential series and from the inverse moment matrix; the
// two must agree entrywise.
std::vector<std::vector<double>> kernel_coefficients_series(unsigned n_dim);
std::vector<std::vector<double>> kernel_coefficients_inverse(unsigned n_dim);

struct MomentValue {
  Rational value;
  Partition partition;
  unsigned dim = 0;
};

// Closed-form Schur average over the real Ginibre ensemble: 0 when any part
// is odd or the partition is longer than the dimension, otherwise the
// positive integer prod_{n: l_n > 0} prod_{j=0}^{l_n/2 - 1} (N - n + 1 + 2j).
// The product telescopes the Gamma ratios 2^{l_n/2} G((N-n+l_n+1)/2) /
// G((N-n+1)/2) via 2^m G(x+m)/G(x) = prod_j (2x + 2j), so no floating Gamma
// ever enters. Thread-safe memo cache behind the scenes.
Rational schur_average_closed(const Partition& lambda, unsigned n_dim);

// Index sequence N - n + lambda_n + 1 (n = 1..N), ascending.
std::vector<std::size_t> moment_index_sequence(const Partition& lambda,
                                               unsigned n_dim);

// Smallest even dimension holding all moment indices: even M >= N + l_1 + 1.
std::size_t embedding_dimension(const Partition& lambda, unsigned n_dim);

// The same average through the Pfaffian construction: the sub-Pfaffian of
// the inverse staircase matrix on the moment indices (plus the last index
// of the embedding, carrying weight 1, when N is odd), scaled by the a
// products and normalized by the empty-partition construction. Agrees with
// schur_average_closed exactly. embed_override (even, >= the automatic
// choice) selects a larger embedding; the value does not depend on it.
Rational schur_average_pfaffian(const Partition& lambda, unsigned n_dim,
                                std::size_t embed_override = 0);

// <Tr H^{2m}>_N = prod_{j=1}^m (N + 2(m-j)); m = 0 returns N (trace of the
// identity).
Rational trace_moment(unsigned m, unsigned n_dim);

// <Tr H^power>_N for any power: 0 for odd powers, N for power 0.
Rational trace_moment_power(unsigned power, unsigned n_dim);

// Same trace moment assembled from the hook expansion of t_{2m} and the
// closed-form Schur averages; all hooks except the single row vanish.
Rational trace_moment_via_hooks(unsigned m, unsigned n_dim);

// Coefficients c_k = N!/(N-k)! of <det(1+x1 H) det(1+x2 H)>_N as a
// polynomial in x1 x2, k = 0..N.
std::vector<Rational> charpoly_pair_average(unsigned n_dim);

// <prod_j det(1 + x_j H)>_N = sum over partitions in the
// floor(n/2) x N box of the closed-form average of the doubled partition
// times sigma_{(2 lambda)'}(xs).
template <typename S>
S charpoly_product_average(const std::vector<S>& xs, unsigned n_dim) {
  if (xs.empty())
    throw std::invalid_argument("charpoly product needs at least one point");
  const unsigned cap = static_cast<unsigned>(xs.size()) / 2;
  S total = ScalarTraits<S>::from_long(0);
  for (const Partition& lambda :
       enumerate_partitions(cap * n_dim, n_dim, cap)) {
    Rational c = schur_average_closed(lambda.doubled(), n_dim);
    if (c == 0) continue;
    total += scalar_cast<S>(c) *
             schur_jacobi_trudi(lambda.doubled().conjugate(), xs);
  }
  return total;
}

// 1/C_N = Pfaff(A) on the first N indices, with the odd-N extension index
// carrying weight 1. Exact radical form; positive.
RadicalScalar normalization_constant(unsigned n_dim);

}  // namespace sg
