#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "sg/linalg.hpp"
#include "sg/partition.hpp"
#include "sg/rational.hpp"

namespace sg {

// Evaluation points (eigenvalues). Scalar mode is the template parameter:
// Rational for exact work, std::complex<double> or double for sampling.
// Every function here is symmetric in the points.
template <typename S>
using PointSet = std::vector<S>;

// Tableau enumeration is exponential in the weight; guarded by this cap.
inline constexpr unsigned kTableauWeightCap = 12;

struct TableauCapExceeded : std::domain_error {
  explicit TableauCapExceeded(unsigned long weight)
      : std::domain_error("tableau enumeration capped at weight " +
                          std::to_string(kTableauWeightCap) + ", got " +
                          std::to_string(weight)) {}
};

struct DegeneratePoints : std::domain_error {
  DegeneratePoints()
      : std::domain_error(
            "coinciding points make the Vandermonde denominator zero") {}
};

// e_0..e_cap as coefficients of prod_i (1 + z_i x), by polynomial
// multiplication. e_n = 0 for n > N.
template <typename S>
std::vector<S> elementary_all(const PointSet<S>& pts, unsigned cap) {
  std::vector<S> e(cap + 1, ScalarTraits<S>::from_long(0));
  e[0] = ScalarTraits<S>::from_long(1);
  unsigned used = 0;
  for (const S& z : pts) {
    used = std::min<unsigned>(used + 1, cap);
    for (unsigned k = used; k >= 1; --k) e[k] += z * e[k - 1];
  }
  return e;
}

template <typename S>
S elementary(unsigned n, const PointSet<S>& pts) {
  if (n > pts.size()) return ScalarTraits<S>::from_long(0);
  return elementary_all(pts, n)[n];
}

// h_0..h_cap from the expansion of prod_i 1/(1 - z_i x), accumulated one
// point at a time (h'[k] = h[k] + z h'[k-1]).
template <typename S>
std::vector<S> complete_all(const PointSet<S>& pts, unsigned cap) {
  std::vector<S> h(cap + 1, ScalarTraits<S>::from_long(0));
  h[0] = ScalarTraits<S>::from_long(1);
  for (const S& z : pts) {
    for (unsigned k = 1; k <= cap; ++k) h[k] += z * h[k - 1];
  }
  return h;
}

template <typename S>
S complete(unsigned n, const PointSet<S>& pts) {
  return complete_all(pts, n)[n];
}

template <typename S>
S power_sum(unsigned n, const PointSet<S>& pts) {
  if (n < 1) throw std::invalid_argument("power_sum needs n >= 1");
  S total = ScalarTraits<S>::from_long(0);
  for (const S& z : pts) {
    S p = z;
    for (unsigned k = 1; k < n; ++k) p *= z;
    total += p;
  }
  return total;
}

namespace detail {

template <typename S>
void tableau_fill(const std::vector<unsigned>& shape,
                  std::vector<std::vector<unsigned>>& grid, std::size_t row,
                  std::size_t col, unsigned n_points, const PointSet<S>& pts,
                  const S& running, S& total) {
  if (row == shape.size()) {
    total += running;
    return;
  }
  std::size_t next_row = row;
  std::size_t next_col = col + 1;
  if (next_col == shape[row]) {
    next_row = row + 1;
    next_col = 0;
  }
  unsigned lo = 1;
  if (col > 0) lo = std::max(lo, grid[row][col - 1]);
  if (row > 0) lo = std::max(lo, grid[row - 1][col] + 1);
  for (unsigned v = lo; v <= n_points; ++v) {
    grid[row][col] = v;
    tableau_fill(shape, grid, next_row, next_col, n_points, pts,
                 S(running * pts[v - 1]), total);
  }
}

}  // namespace detail

// Reference Schur evaluation: the monomial-weight sum over semistandard
// Young tableaux of shape lambda with entries in 1..N. Exact, division
// free, exponential in the weight (see kTableauWeightCap).
template <typename S>
S schur_tableau(const Partition& lambda, const PointSet<S>& pts) {
  if (lambda.length() > pts.size()) return ScalarTraits<S>::from_long(0);
  if (lambda.empty()) return ScalarTraits<S>::from_long(1);
  if (lambda.weight() > kTableauWeightCap)
    throw TableauCapExceeded(lambda.weight());
  std::vector<std::vector<unsigned>> grid;
  for (unsigned p : lambda.parts()) grid.emplace_back(p, 0u);
  S total = ScalarTraits<S>::from_long(0);
  detail::tableau_fill(lambda.parts(), grid, 0, 0,
                       static_cast<unsigned>(pts.size()), pts,
                       ScalarTraits<S>::from_long(1), total);
  return total;
}

// Jacobi-Trudi: sigma_lambda = det(h_{lambda_i - i + j}), an l x l
// determinant of complete symmetric functions, l = length(lambda).
template <typename S>
S schur_jacobi_trudi(const Partition& lambda, const PointSet<S>& pts) {
  if (lambda.length() > pts.size()) return ScalarTraits<S>::from_long(0);
  if (lambda.empty()) return ScalarTraits<S>::from_long(1);
  const std::size_t l = lambda.length();
  const unsigned max_index = lambda.parts()[0] + static_cast<unsigned>(l);
  std::vector<S> h = complete_all(pts, max_index);
  Matrix<S> m(l, std::vector<S>(l, ScalarTraits<S>::from_long(0)));
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j < l; ++j) {
      long idx = static_cast<long>(lambda.parts()[i]) - static_cast<long>(i) +
                 static_cast<long>(j);
      if (idx >= 0) m[i][j] = h[static_cast<std::size_t>(idx)];
    }
  }
  return determinant(std::move(m));
}

// Dual Jacobi-Trudi: sigma_lambda = det(e_{lambda'_i - i + j}) over the
// conjugate shape. Agrees exactly with schur_jacobi_trudi.
template <typename S>
S schur_jacobi_trudi_dual(const Partition& lambda, const PointSet<S>& pts) {
  if (lambda.length() > pts.size()) return ScalarTraits<S>::from_long(0);
  if (lambda.empty()) return ScalarTraits<S>::from_long(1);
  const Partition conj = lambda.conjugate();
  const std::size_t l = conj.length();
  const unsigned max_index = conj.parts()[0] + static_cast<unsigned>(l);
  std::vector<S> e = elementary_all(pts, max_index);
  Matrix<S> m(l, std::vector<S>(l, ScalarTraits<S>::from_long(0)));
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j < l; ++j) {
      long idx = static_cast<long>(conj.parts()[i]) - static_cast<long>(i) +
                 static_cast<long>(j);
      if (idx >= 0) m[i][j] = e[static_cast<std::size_t>(idx)];
    }
  }
  return determinant(std::move(m));
}

// The bialternant ratio det(z_m^{N-n+lambda_n}) / det(z_m^{N-n}). Undefined
// at coinciding points; kept as a cross-check route that throws
// DegeneratePoints instead of dividing by zero.
template <typename S>
S schur_vandermonde(const Partition& lambda, const PointSet<S>& pts) {
  const std::size_t n_pts = pts.size();
  if (lambda.length() > n_pts) return ScalarTraits<S>::from_long(0);
  for (std::size_t i = 0; i < n_pts; ++i)
    for (std::size_t j = i + 1; j < n_pts; ++j)
      if (pts[i] == pts[j]) throw DegeneratePoints();
  auto power = [](const S& z, unsigned long e) {
    S p = ScalarTraits<S>::from_long(1);
    for (unsigned long k = 0; k < e; ++k) p *= z;
    return p;
  };
  Matrix<S> num(n_pts, std::vector<S>(n_pts, ScalarTraits<S>::from_long(0)));
  Matrix<S> den(n_pts, std::vector<S>(n_pts, ScalarTraits<S>::from_long(0)));
  for (std::size_t m = 0; m < n_pts; ++m) {
    for (std::size_t n = 1; n <= n_pts; ++n) {
      unsigned long base = n_pts - n;
      num[m][n - 1] = power(pts[m], base + lambda.part_or_zero(n));
      den[m][n - 1] = power(pts[m], base);
    }
  }
  S d = determinant(std::move(den));
  if (d == ScalarTraits<S>::from_long(0)) throw DegeneratePoints();
  return determinant(std::move(num)) / d;
}

// t_n expanded over hook shapes: sum_k (-1)^{n-k} sigma_{(k,1^{n-k})}.
// Must equal power_sum(n, pts).
template <typename S>
S hook_expand_power_sum(unsigned n, const PointSet<S>& pts) {
  if (n < 1) throw std::invalid_argument("hook expansion needs n >= 1");
  S total = ScalarTraits<S>::from_long(0);
  for (const auto& [hook, sign] : hook_partitions(n)) {
    S term = schur_jacobi_trudi(hook, pts);
    if (sign < 0)
      total -= term;
    else
      total += term;
  }
  return total;
}

// Dual Cauchy identity, left side: prod_j prod_k (1 + x_j z_k).
template <typename S>
S dual_cauchy_lhs(const PointSet<S>& xs, const PointSet<S>& zs) {
  S total = ScalarTraits<S>::from_long(1);
  for (const S& x : xs)
    for (const S& z : zs) total *= ScalarTraits<S>::from_long(1) + x * z;
  return total;
}

// Dual Cauchy identity, right side: sum_lambda sigma_{lambda'}(xs)
// sigma_lambda(zs), over lambda with lambda_1 <= |xs| and length <= |zs|.
// Exhaustive when weight_cap >= |xs| * |zs|.
template <typename S>
S dual_cauchy_rhs(const PointSet<S>& xs, const PointSet<S>& zs,
                  unsigned weight_cap) {
  const unsigned nx = static_cast<unsigned>(xs.size());
  const unsigned nz = static_cast<unsigned>(zs.size());
  S total = ScalarTraits<S>::from_long(0);
  for (const Partition& lambda :
       enumerate_partitions(std::min(weight_cap, nx * nz), nz, nx)) {
    total += schur_jacobi_trudi(lambda.conjugate(), xs) *
             schur_jacobi_trudi(lambda, zs);
  }
  return total;
}

}  // namespace sg
