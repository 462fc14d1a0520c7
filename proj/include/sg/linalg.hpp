#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "sg/rational.hpp"

namespace sg {

template <typename S>
using Matrix = std::vector<std::vector<S>>;

// Determinant of a dense square matrix. Exact scalars go through Bareiss
// fraction-free elimination (all divisions exact); floating scalars through
// Gaussian elimination with partial pivoting. The argument is consumed.
template <typename S>
S determinant(Matrix<S> m) {
  const std::size_t n = m.size();
  if (n == 0) return ScalarTraits<S>::from_long(1);
  int sign = 1;
  if constexpr (ScalarTraits<S>::is_exact) {
    S prev = ScalarTraits<S>::from_long(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (m[k][k] == ScalarTraits<S>::from_long(0)) {
        std::size_t pivot = k;
        for (std::size_t i = k + 1; i < n; ++i) {
          if (!(m[i][k] == ScalarTraits<S>::from_long(0))) {
            pivot = i;
            break;
          }
        }
        if (pivot == k) return ScalarTraits<S>::from_long(0);
        std::swap(m[k], m[pivot]);
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        for (std::size_t j = k + 1; j < n; ++j) {
          m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        }
      }
      prev = m[k][k];
    }
    S det = m[n - 1][n - 1];
    if (sign < 0) det = -det;
    return det;
  } else {
    S det = ScalarTraits<S>::from_long(1);
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t pivot = k;
      double best = ScalarTraits<S>::magnitude(m[k][k]);
      for (std::size_t i = k + 1; i < n; ++i) {
        double mag = ScalarTraits<S>::magnitude(m[i][k]);
        if (mag > best) {
          best = mag;
          pivot = i;
        }
      }
      if (best == 0.0) return ScalarTraits<S>::from_long(0);
      if (pivot != k) {
        std::swap(m[k], m[pivot]);
        sign = -sign;
      }
      det *= m[k][k];
      for (std::size_t i = k + 1; i < n; ++i) {
        S factor = m[i][k] / m[k][k];
        for (std::size_t j = k; j < n; ++j) m[i][j] -= factor * m[k][j];
      }
    }
    if (sign < 0) det = -det;
    return det;
  }
}

template <typename S>
Matrix<S> matrix_multiply(const Matrix<S>& a, const Matrix<S>& b) {
  const std::size_t n = a.size();
  const std::size_t k = b.size();
  const std::size_t m = k ? b[0].size() : 0;
  Matrix<S> c(n, std::vector<S>(m, ScalarTraits<S>::from_long(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

}  // namespace sg
