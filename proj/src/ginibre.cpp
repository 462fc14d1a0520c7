#include "sg/ginibre.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace sg {

double RadicalScalar::to_double() const {
  double v = sg::to_double(coeff);
  if (sqrt2_pow != 0)
    v *= std::pow(std::numbers::sqrt2, sqrt2_pow);
  if (sqrtpi_pow != 0)
    v *= std::pow(std::sqrt(std::numbers::pi), sqrtpi_pow);
  return v;
}

RadicalScalar a_coefficient(unsigned k) {
  if (k == 0) throw std::invalid_argument("a_k needs k >= 1");
  RadicalScalar r;
  if (k % 2 == 0) {
    r.coeff = Rational(pow2(k / 2) * factorial(k / 2 - 1));
  } else {
    // 2^{k/2} Gamma(k/2) = (k-2)!! sqrt(2) sqrt(pi); (-1)!! = 1 covers k = 1.
    r.coeff = Rational(double_factorial(static_cast<int>(k) - 2));
    r.sqrt2_pow = 1;
    r.sqrtpi_pow = 1;
  }
  return r;
}

double a_coefficient_double(unsigned k) {
  return a_coefficient(k).to_double();
}

SkewMatrix<double> build_A(std::size_t dim) {
  std::vector<double> a(dim + 1);
  for (std::size_t k = 1; k <= dim; ++k) a[k] = a_coefficient_double(k);
  return SkewMatrix<double>::from_upper(dim, [&](std::size_t k, std::size_t l) {
    // 0-based k < l here; the staircase has +1 at 1-based (odd, even).
    return (k % 2 == 0 && l % 2 == 1) ? a[k + 1] * a[l + 1] : 0.0;
  });
}

SkewMatrix<double> build_A_inverse(std::size_t dim) {
  std::vector<double> a(dim + 1);
  for (std::size_t k = 1; k <= dim; ++k) a[k] = a_coefficient_double(k);
  return SkewMatrix<double>::from_upper(dim, [&](std::size_t k, std::size_t l) {
    // a^{-1} eps a^{-1} with eps tridiagonal, -1 on the superdiagonal.
    return l == k + 1 ? -1.0 / (a[k + 1] * a[l + 1]) : 0.0;
  });
}

std::complex<double> kernel_kn(unsigned n_dim, std::complex<double> z1,
                               std::complex<double> z2) {
  if (n_dim < 2) throw std::invalid_argument("kernel needs dimension >= 2");
  std::complex<double> sum = 0.0;
  std::complex<double> term = 1.0;
  const std::complex<double> w = z1 * z2;
  for (unsigned n = 0; n + 2 <= n_dim; ++n) {
    sum += term;
    term *= w / static_cast<double>(n + 1);
  }
  const double c = 2.0 * std::sqrt(2.0 * std::numbers::pi);
  return (z1 - z2) / c * sum;
}

std::vector<std::vector<double>> kernel_coefficients_series(unsigned n_dim) {
  if (n_dim < 2) throw std::invalid_argument("kernel needs dimension >= 2");
  std::vector<std::vector<double>> c(n_dim, std::vector<double>(n_dim, 0.0));
  const double norm = 2.0 * std::sqrt(2.0 * std::numbers::pi);
  double inv_fact = 1.0;
  for (unsigned n = 0; n + 2 <= n_dim; ++n) {
    if (n > 0) inv_fact /= static_cast<double>(n);
    // (z1 - z2) z1^n z2^n / (c n!) contributes to (n+1, n) and (n, n+1).
    c[n + 1][n] += inv_fact / norm;
    c[n][n + 1] -= inv_fact / norm;
  }
  return c;
}

std::vector<std::vector<double>> kernel_coefficients_inverse(unsigned n_dim) {
  if (n_dim < 2) throw std::invalid_argument("kernel needs dimension >= 2");
  // K_N(z1, z2) = sum_{k,l=1}^{N} z1^{k-1} (A^{-1})_{k,l} z2^{l-1}; the
  // tridiagonal entries -1/(a_n a_{n+1}) = -1/(2 sqrt(2 pi) (n-1)!) match
  // the series coefficients through the duplication identity.
  SkewMatrix<double> inv = build_A_inverse(n_dim);
  std::vector<std::vector<double>> c(n_dim, std::vector<double>(n_dim, 0.0));
  for (std::size_t k = 0; k < n_dim; ++k)
    for (std::size_t l = 0; l < n_dim; ++l) c[k][l] = inv.at(k, l);
  return c;
}

namespace {

struct MemoKey {
  std::vector<unsigned> parts;
  unsigned dim;
  bool operator<(const MemoKey& o) const {
    return std::tie(parts, dim) < std::tie(o.parts, o.dim);
  }
};

std::map<MemoKey, Rational>& closed_cache() {
  static std::map<MemoKey, Rational> cache;
  return cache;
}
std::mutex& closed_cache_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

Rational schur_average_closed(const Partition& lambda, unsigned n_dim) {
  if (lambda.length() > n_dim) return Rational(0);
  for (unsigned part : lambda.parts())
    if (part % 2 != 0) return Rational(0);
  if (lambda.empty()) return Rational(1);

  MemoKey key{lambda.parts(), n_dim};
  {
    std::lock_guard<std::mutex> lock(closed_cache_mutex());
    auto it = closed_cache().find(key);
    if (it != closed_cache().end()) return it->second;
  }

  Integer prod = 1;
  for (std::size_t n = 1; n <= lambda.length(); ++n) {
    const unsigned part = lambda.part_or_zero(n);
    for (unsigned j = 0; j < part / 2; ++j)
      prod *= Integer(n_dim - n + 1 + 2 * j);
  }
  Rational result{prod};

  std::lock_guard<std::mutex> lock(closed_cache_mutex());
  closed_cache().emplace(std::move(key), result);
  return result;
}

std::vector<std::size_t> moment_index_sequence(const Partition& lambda,
                                               unsigned n_dim) {
  if (n_dim == 0) throw std::invalid_argument("dimension must be positive");
  if (lambda.length() > n_dim)
    throw InvalidPartition("partition longer than matrix dimension");
  std::vector<std::size_t> s(n_dim);
  for (unsigned n = 1; n <= n_dim; ++n)
    s[n - 1] = n_dim - n + lambda.part_or_zero(n) + 1;
  std::sort(s.begin(), s.end());
  return s;
}

std::size_t embedding_dimension(const Partition& lambda, unsigned n_dim) {
  std::size_t top = n_dim + lambda.part_or_zero(1) + 1;
  return top + (top % 2);
}

namespace {

// Exact Pfaffian of the inverse staircase restricted to the given 1-based
// ascending indices (within any even ambient dimension; the pattern entry
// depends only on the indices themselves).
Rational epsilon_inverse_sub_pfaffian(const std::vector<std::size_t>& rows) {
  if (rows.size() % 2 != 0) return Rational(0);
  if (rows.empty()) return Rational(1);
  const std::size_t n = rows.size();
  Matrix<Rational> m(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t k = rows[i], l = rows[j];
      if (k % 2 == 1 && l % 2 == 0) {
        m[i][j] = 1;
        m[j][i] = -1;
      }
    }
  return pfaffian(SkewMatrix<Rational>::from_rows(std::move(m)));
}

// a-weight product over the retained indices, with the odd-dimension
// extension index (== embed) carrying weight 1 instead of a_embed.
RadicalScalar a_product(const std::vector<std::size_t>& rows, bool odd_dim,
                        std::size_t embed) {
  RadicalScalar p;
  for (std::size_t k : rows) {
    if (odd_dim && k == embed) continue;
    p *= a_coefficient(static_cast<unsigned>(k));
  }
  return p;
}

}  // namespace

Rational schur_average_pfaffian(const Partition& lambda, unsigned n_dim,
                                std::size_t embed_override) {
  std::vector<std::size_t> indices = moment_index_sequence(lambda, n_dim);
  std::size_t embed = embedding_dimension(lambda, n_dim);
  if (embed_override != 0) {
    if (embed_override % 2 != 0 || embed_override < embed)
      throw std::invalid_argument(
          "embedding override must be even and hold every moment index");
    embed = embed_override;
  }

  const bool odd = (n_dim % 2 != 0);
  std::vector<std::size_t> numer_rows = indices;
  std::vector<std::size_t> denom_rows(n_dim);
  for (unsigned k = 1; k <= n_dim; ++k) denom_rows[k - 1] = k;
  if (odd) {
    numer_rows.push_back(embed);
    denom_rows.push_back(embed);
  }

  Rational num_pf = epsilon_inverse_sub_pfaffian(numer_rows);
  Rational den_pf = epsilon_inverse_sub_pfaffian(denom_rows);
  if (den_pf != 1)
    throw std::logic_error("empty-partition construction must normalize to one");

  if (num_pf == 0) {
    // A vanishing Pfaffian is exactly the odd-part case; confirm against
    // the closed route before reporting it.
    if (schur_average_closed(lambda, n_dim) != 0)
      throw std::logic_error("pfaffian route vanished where the closed one did not");
    return Rational(0);
  }

  RadicalScalar ratio = a_product(numer_rows, odd, embed);
  ratio /= a_product(denom_rows, odd, embed);
  ratio.coeff *= num_pf / den_pf;
  ratio.normalize();
  if (!ratio.is_rational())
    throw std::logic_error("irrational weight factors must cancel in the moment ratio");
  return ratio.coeff;
}

Rational trace_moment(unsigned m, unsigned n_dim) {
  if (m == 0) return Rational(static_cast<long>(n_dim));
  Integer prod = 1;
  for (unsigned j = 1; j <= m; ++j) prod *= Integer(n_dim + 2 * (m - j));
  return Rational(prod);
}

Rational trace_moment_power(unsigned power, unsigned n_dim) {
  if (power % 2 != 0) return Rational(0);
  return trace_moment(power / 2, n_dim);
}

Rational trace_moment_via_hooks(unsigned m, unsigned n_dim) {
  if (m == 0) return Rational(static_cast<long>(n_dim));
  Rational total{0};
  for (const auto& [hook, sign] : hook_partitions(2 * m))
    total += Rational(sign) * schur_average_closed(hook, n_dim);
  return total;
}

std::vector<Rational> charpoly_pair_average(unsigned n_dim) {
  std::vector<Rational> c(n_dim + 1);
  for (unsigned k = 0; k <= n_dim; ++k)
    c[k] = Rational(factorial(n_dim) / factorial(n_dim - k));
  return c;
}

RadicalScalar normalization_constant(unsigned n_dim) {
  const bool odd = (n_dim % 2 != 0);
  std::vector<std::size_t> rows(n_dim);
  for (unsigned k = 1; k <= n_dim; ++k) rows[k - 1] = k;
  std::size_t embed = n_dim + (odd ? 1 : 0);
  if (odd) rows.push_back(embed);
  RadicalScalar inv_c = a_product(rows, odd, embed);
  inv_c.coeff *= epsilon_inverse_sub_pfaffian(rows);
  inv_c.normalize();
  return inv_c;
}

}  // namespace sg
