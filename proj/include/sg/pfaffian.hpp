#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sg/rational.hpp"

namespace sg {

struct OddDimension : std::invalid_argument {
  explicit OddDimension(std::size_t dim)
      : std::invalid_argument("dimension must be even, got " +
                              std::to_string(dim)) {}
};

struct IndexError : std::invalid_argument {
  explicit IndexError(const std::string& what) : std::invalid_argument(what) {}
};

// Square skew-symmetric matrix, immutable after construction. Entry (k,l)
// is 0-indexed internally; the index-sequence APIs below are 1-based to
// match the staircase patterns they implement.
template <typename S>
class SkewMatrix {
 public:
  static SkewMatrix from_rows(std::vector<std::vector<S>> rows) {
    const std::size_t n = rows.size();
    for (const auto& row : rows)
      if (row.size() != n)
        throw std::invalid_argument("skew matrix rows must be square");
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = k; l < n; ++l) {
        if (!(rows[k][l] == -rows[l][k]))
          throw std::invalid_argument("matrix is not skew-symmetric");
      }
    }
    return SkewMatrix(std::move(rows));
  }

  // Builds from the strict upper triangle: f(k, l) for 0 <= k < l < dim.
  template <typename F>
  static SkewMatrix from_upper(std::size_t dim, F f) {
    std::vector<std::vector<S>> rows(
        dim, std::vector<S>(dim, ScalarTraits<S>::from_long(0)));
    for (std::size_t k = 0; k < dim; ++k) {
      for (std::size_t l = k + 1; l < dim; ++l) {
        S v = f(k, l);
        rows[k][l] = v;
        rows[l][k] = -v;
      }
    }
    return SkewMatrix(std::move(rows));
  }

  std::size_t dim() const { return rows_.size(); }
  const S& at(std::size_t k, std::size_t l) const { return rows_[k][l]; }
  const std::vector<std::vector<S>>& rows() const { return rows_; }

  // Principal submatrix on 1-based, strictly increasing indices.
  SkewMatrix principal_submatrix(std::span<const std::size_t> indices) const {
    for (std::size_t i = 0; i < indices.size(); ++i) {
      if (indices[i] < 1 || indices[i] > dim())
        throw IndexError("index " + std::to_string(indices[i]) +
                         " outside 1.." + std::to_string(dim()));
      if (i > 0 && indices[i] <= indices[i - 1])
        throw IndexError("indices must be strictly increasing");
    }
    std::vector<std::vector<S>> sub(
        indices.size(),
        std::vector<S>(indices.size(), ScalarTraits<S>::from_long(0)));
    for (std::size_t i = 0; i < indices.size(); ++i)
      for (std::size_t j = 0; j < indices.size(); ++j)
        sub[i][j] = rows_[indices[i] - 1][indices[j] - 1];
    return SkewMatrix(std::move(sub));
  }

 private:
  explicit SkewMatrix(std::vector<std::vector<S>> rows)
      : rows_(std::move(rows)) {}
  std::vector<std::vector<S>> rows_;
};

namespace detail {

// First-row expansion Pf(A) = sum_j (-1)^j A_{0j} Pf(A minus rows/cols 0,j),
// over the live index list. Exact and division free.
template <typename S>
S pfaffian_expand(const std::vector<std::vector<S>>& a,
                  std::vector<std::size_t>& live) {
  const std::size_t n = live.size();
  if (n == 0) return ScalarTraits<S>::from_long(1);
  if (n == 2) return a[live[0]][live[1]];
  S total = ScalarTraits<S>::from_long(0);
  const std::size_t first = live[0];
  std::vector<std::size_t> rest(live.begin() + 1, live.end());
  for (std::size_t j = 0; j < rest.size(); ++j) {
    const S& entry = a[first][rest[j]];
    if (entry == ScalarTraits<S>::from_long(0)) continue;
    std::vector<std::size_t> sub;
    sub.reserve(rest.size() - 1);
    for (std::size_t k = 0; k < rest.size(); ++k)
      if (k != j) sub.push_back(rest[k]);
    S term = entry * pfaffian_expand(a, sub);
    if (j % 2 == 0)
      total += term;
    else
      total -= term;
  }
  return total;
}

// Parlett-Reid tridiagonalization by congruence; the Pfaffian is the
// product of the (k, k+1) pivots times the swap sign. Pivot choice: largest
// magnitude for floating scalars, first nonzero for exact ones.
template <typename S>
S pfaffian_eliminate(std::vector<std::vector<S>> a) {
  const std::size_t n = a.size();
  S pf = ScalarTraits<S>::from_long(1);
  for (std::size_t k = 0; k + 1 < n; k += 2) {
    std::size_t pivot = k + 1;
    if constexpr (ScalarTraits<S>::is_exact) {
      if (a[k][pivot] == ScalarTraits<S>::from_long(0)) {
        std::size_t found = 0;
        for (std::size_t i = k + 2; i < n; ++i) {
          if (!(a[k][i] == ScalarTraits<S>::from_long(0))) {
            found = i;
            break;
          }
        }
        if (found == 0) return ScalarTraits<S>::from_long(0);
        pivot = found;
      }
    } else {
      double best = ScalarTraits<S>::magnitude(a[k][pivot]);
      for (std::size_t i = k + 2; i < n; ++i) {
        double mag = ScalarTraits<S>::magnitude(a[k][i]);
        if (mag > best) {
          best = mag;
          pivot = i;
        }
      }
      if (best == 0.0) return ScalarTraits<S>::from_long(0);
    }
    if (pivot != k + 1) {
      std::swap(a[k + 1], a[pivot]);
      for (std::size_t i = 0; i < n; ++i) std::swap(a[i][k + 1], a[i][pivot]);
      pf = -pf;
    }
    pf *= a[k][k + 1];
    for (std::size_t i = k + 2; i < n; ++i) {
      if (a[i][k] == ScalarTraits<S>::from_long(0)) continue;
      S t = a[i][k] / a[k + 1][k];
      for (std::size_t j = 0; j < n; ++j) a[i][j] -= t * a[k + 1][j];
      for (std::size_t j = 0; j < n; ++j) a[j][i] -= t * a[j][k + 1];
    }
  }
  return pf;
}

}  // namespace detail

inline constexpr std::size_t kPfaffianExpansionCap = 12;

// Pfaffian of a skew-symmetric matrix. Odd dimension returns 0 by
// convention; the empty matrix has Pfaffian 1. Exact scalars use first-row
// expansion up to dim 12 and exact elimination beyond; floating scalars use
// elimination with greedy pivoting. Pf(A)^2 = det(A).
template <typename S>
S pfaffian(const SkewMatrix<S>& m) {
  const std::size_t n = m.dim();
  if (n % 2 != 0) return ScalarTraits<S>::from_long(0);
  if (n == 0) return ScalarTraits<S>::from_long(1);
  if constexpr (ScalarTraits<S>::is_exact) {
    if (n <= kPfaffianExpansionCap) {
      std::vector<std::size_t> live(n);
      for (std::size_t i = 0; i < n; ++i) live[i] = i;
      return detail::pfaffian_expand(m.rows(), live);
    }
  }
  return detail::pfaffian_eliminate(m.rows());
}

// Pfaffian of the principal submatrix on 1-based strictly increasing
// indices of even count; the empty selection gives 1.
template <typename S>
S sub_pfaffian(const SkewMatrix<S>& m, std::span<const std::size_t> indices) {
  if (indices.size() % 2 != 0)
    throw IndexError("sub-Pfaffian needs an even number of indices");
  return pfaffian(m.principal_submatrix(indices));
}

// The tridiagonal skew matrix with -1 on the upper diagonal, defined in
// even dimension only.
template <typename S>
SkewMatrix<S> build_epsilon(std::size_t dim) {
  if (dim < 2 || dim % 2 != 0) throw OddDimension(dim);
  return SkewMatrix<S>::from_upper(dim, [](std::size_t k, std::size_t l) {
    return l == k + 1 ? ScalarTraits<S>::from_long(-1)
                      : ScalarTraits<S>::from_long(0);
  });
}

// Its inverse: +1 at (k, l), 1-based, whenever k < l with k odd and l even;
// the same staircase in every even dimension, so any leading block of a
// bigger build agrees with a smaller build.
template <typename S>
SkewMatrix<S> build_epsilon_inverse(std::size_t dim) {
  if (dim < 2 || dim % 2 != 0) throw OddDimension(dim);
  return SkewMatrix<S>::from_upper(dim, [](std::size_t k, std::size_t l) {
    return (k % 2 == 0 && l % 2 == 1) ? ScalarTraits<S>::from_long(1)
                                      : ScalarTraits<S>::from_long(0);
  });
}

// Multilinear generating polynomial D_M for the subdeterminants of the
// inverse staircase matrix: D_M = D_{M-1} + x_M x_{M-1} D_{M-2}, with
// D_1 = 1 and D_2 = 1 + x_1 x_2. Every monomial has coefficient +1 and is a
// product of disjoint consecutive pairs x_k x_{k+1}. The coefficient of
// prod_{k in cut} x_k equals the principal minor of the inverse staircase
// on the complement of `cut`.
class DnPolynomial {
 public:
  explicit DnPolynomial(unsigned num_vars);

  unsigned num_vars() const { return num_vars_; }
  // Monomials as sorted 1-based index sets; the constant term is the empty
  // set. The count is Fibonacci(num_vars + 1).
  const std::vector<std::vector<unsigned>>& monomials() const {
    return monomials_;
  }

  // Coefficient of prod_{k in vars} x_k: 1 or 0. `vars` must be sorted.
  bool has_monomial(const std::vector<unsigned>& vars) const;

  double evaluate(std::span<const double> values) const;

  static constexpr unsigned kMaxVars = 20;

 private:
  unsigned num_vars_;
  std::vector<std::vector<unsigned>> monomials_;
};

// Combinatorial prediction of the sub-Pfaffian of the inverse staircase
// matrix on retained 1-based rows within 1..ambient_dim (0 = smallest even
// dimension covering the rows): 0 unless the cut complement splits into
// disjoint consecutive pairs, otherwise the sign of the permutation that
// moves the retained rows to the front, (-1)^{sum (r_i - i)}.
int consecutive_pair_pfaffian_sign(std::span<const std::size_t> rows,
                                   std::size_t ambient_dim = 0);

}  // namespace sg
