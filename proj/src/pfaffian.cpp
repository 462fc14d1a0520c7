#include "sg/pfaffian.hpp"

#include <algorithm>

namespace sg {

DnPolynomial::DnPolynomial(unsigned num_vars) : num_vars_(num_vars) {
  if (num_vars < 1 || num_vars > kMaxVars)
    throw std::invalid_argument("DnPolynomial supports 1.." +
                                std::to_string(kMaxVars) + " variables");
  // D_1 = 1, D_2 = 1 + x1 x2, D_M = D_{M-1} + x_M x_{M-1} D_{M-2}.
  std::vector<std::vector<std::vector<unsigned>>> d(num_vars + 1);
  d[0] = {{}};
  d[1] = {{}};
  for (unsigned m = 2; m <= num_vars; ++m) {
    d[m] = d[m - 1];
    for (const auto& mono : d[m - 2]) {
      std::vector<unsigned> extended = mono;
      extended.push_back(m - 1);
      extended.push_back(m);
      d[m].push_back(std::move(extended));
    }
  }
  monomials_ = std::move(d[num_vars]);
}

bool DnPolynomial::has_monomial(const std::vector<unsigned>& vars) const {
  return std::find(monomials_.begin(), monomials_.end(), vars) !=
         monomials_.end();
}

double DnPolynomial::evaluate(std::span<const double> values) const {
  if (values.size() != num_vars_)
    throw std::invalid_argument("evaluate needs one value per variable");
  double total = 0.0;
  for (const auto& mono : monomials_) {
    double term = 1.0;
    for (unsigned k : mono) term *= values[k - 1];
    total += term;
  }
  return total;
}

int consecutive_pair_pfaffian_sign(std::span<const std::size_t> rows,
                                   std::size_t ambient_dim) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] < 1) throw IndexError("indices are 1-based");
    if (i > 0 && rows[i] <= rows[i - 1])
      throw IndexError("indices must be strictly increasing");
  }
  if (rows.size() % 2 != 0)
    throw IndexError("retained index count must be even");
  std::size_t max_row = rows.empty() ? 0 : rows.back();
  if (ambient_dim == 0) ambient_dim = max_row + (max_row % 2);
  if (ambient_dim % 2 != 0) throw OddDimension(ambient_dim);
  if (ambient_dim < max_row)
    throw IndexError("ambient dimension smaller than largest index");

  // The cut complement must split into disjoint pairs (c, c+1).
  std::vector<bool> retained(ambient_dim + 1, false);
  for (std::size_t r : rows) retained[r] = true;
  std::size_t c = 1;
  while (c <= ambient_dim) {
    if (retained[c]) {
      ++c;
      continue;
    }
    if (c + 1 > ambient_dim || retained[c + 1]) return 0;
    c += 2;
  }

  // Moving the retained rows/columns to the upper-left corner costs
  // sum_i (r_i - i) transpositions; the surviving corner block keeps the
  // staircase form, so its Pfaffian is +1.
  unsigned long long shifts = 0;
  for (std::size_t i = 0; i < rows.size(); ++i)
    shifts += rows[i] - (i + 1);
  return (shifts % 2 == 0) ? +1 : -1;
}

}  // namespace sg
