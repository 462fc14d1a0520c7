#pragma once

// Brute-force reference implementations used only by tests. Each one takes
// the most literal definition available so the library code is checked
// against something with no shared machinery.

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "sg/rational.hpp"

namespace oracle {

// e_n: sum over all n-element subsets of the product of the chosen points.
template <typename S>
S elementary_subsets(const std::vector<S>& xs, unsigned n) {
  S total = sg::ScalarTraits<S>::from_long(0);
  std::vector<std::size_t> idx;
  std::function<void(std::size_t, S)> rec = [&](std::size_t start, S prod) {
    if (idx.size() == n) {
      total += prod;
      return;
    }
    for (std::size_t i = start; i < xs.size(); ++i) {
      idx.push_back(i);
      rec(i + 1, prod * xs[i]);
      idx.pop_back();
    }
  };
  if (n == 0) return sg::ScalarTraits<S>::from_long(1);
  rec(0, sg::ScalarTraits<S>::from_long(1));
  return total;
}

// h_n: sum over all n-element multisets (non-decreasing index tuples).
template <typename S>
S complete_multisets(const std::vector<S>& xs, unsigned n) {
  if (n == 0) return sg::ScalarTraits<S>::from_long(1);
  S total = sg::ScalarTraits<S>::from_long(0);
  std::function<void(std::size_t, unsigned, S)> rec =
      [&](std::size_t start, unsigned left, S prod) {
        if (left == 0) {
          total += prod;
          return;
        }
        for (std::size_t i = start; i < xs.size(); ++i)
          rec(i, left - 1, prod * xs[i]);
      };
  rec(0, n, sg::ScalarTraits<S>::from_long(1));
  return total;
}

template <typename S>
S power_sum_direct(const std::vector<S>& xs, unsigned n) {
  S total = sg::ScalarTraits<S>::from_long(0);
  for (const S& x : xs) {
    S p = sg::ScalarTraits<S>::from_long(1);
    for (unsigned k = 0; k < n; ++k) p *= x;
    total += p;
  }
  return total;
}

// Pfaffian as the signed sum over perfect matchings, from the recursion
// Pf(A) = sum_j (-1)^j A[v0][vj] Pf(A without v0, vj).
template <typename S>
S pfaffian_matchings(const std::vector<std::vector<S>>& a,
                     std::vector<std::size_t> live) {
  if (live.empty()) return sg::ScalarTraits<S>::from_long(1);
  S total = sg::ScalarTraits<S>::from_long(0);
  const std::size_t first = live[0];
  for (std::size_t j = 1; j < live.size(); ++j) {
    std::vector<std::size_t> rest;
    for (std::size_t k = 1; k < live.size(); ++k)
      if (k != j) rest.push_back(live[k]);
    S term = a[first][live[j]] * pfaffian_matchings(a, rest);
    if (j % 2 == 1)
      total += term;
    else
      total -= term;
  }
  return total;
}

template <typename S>
S pfaffian_matchings(const std::vector<std::vector<S>>& a) {
  if (a.size() % 2 != 0) return sg::ScalarTraits<S>::from_long(0);
  std::vector<std::size_t> live(a.size());
  for (std::size_t i = 0; i < live.size(); ++i) live[i] = i;
  return pfaffian_matchings(a, live);
}

// Laplace-expansion determinant for small exact matrices.
template <typename S>
S determinant_laplace(const std::vector<std::vector<S>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return sg::ScalarTraits<S>::from_long(1);
  if (n == 1) return a[0][0];
  S total = sg::ScalarTraits<S>::from_long(0);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<S>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<S> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(a[r][c]);
      minor.push_back(std::move(row));
    }
    S term = a[0][j] * determinant_laplace(minor);
    if (j % 2 == 0)
      total += term;
    else
      total -= term;
  }
  return total;
}

// Partition counts p(0..n) by Euler's pentagonal-number recurrence.
inline std::vector<long> partition_counts(unsigned n) {
  std::vector<long> p(n + 1, 0);
  p[0] = 1;
  for (unsigned m = 1; m <= n; ++m) {
    long total = 0;
    for (long k = 1;; ++k) {
      const long g1 = k * (3 * k - 1) / 2;
      const long g2 = k * (3 * k + 1) / 2;
      if (g1 > static_cast<long>(m) && g2 > static_cast<long>(m)) break;
      const long sign = (k % 2 == 1) ? 1 : -1;
      if (g1 <= static_cast<long>(m)) total += sign * p[m - g1];
      if (g2 <= static_cast<long>(m)) total += sign * p[m - g2];
    }
    p[m] = total;
  }
  return p;
}

// Composite Simpson rule on [a, b].
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, unsigned panels) {
  const unsigned n = panels * 2;
  const double h = (b - a) / n;
  double total = f(a) + f(b);
  for (unsigned i = 1; i < n; ++i)
    total += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return total * h / 3.0;
}

inline std::uint64_t fibonacci(unsigned n) {
  std::uint64_t a = 0, b = 1;
  for (unsigned i = 0; i < n; ++i) {
    std::uint64_t c = a + b;
    a = b;
    b = c;
  }
  return a;
}

}  // namespace oracle
