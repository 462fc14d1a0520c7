#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "sg/pfaffian.hpp"
#include "sg/rational.hpp"

using sg::Rational;
using sg::SkewMatrix;

namespace {

SkewMatrix<Rational> random_skew(std::mt19937& gen, std::size_t dim) {
  std::uniform_int_distribution<int> entry(-6, 6);
  std::vector<std::vector<Rational>> rows(dim,
                                          std::vector<Rational>(dim, Rational(0)));
  for (std::size_t k = 0; k < dim; ++k)
    for (std::size_t l = k + 1; l < dim; ++l) {
      rows[k][l] = Rational(entry(gen));
      rows[l][k] = -rows[k][l];
    }
  return SkewMatrix<Rational>::from_rows(rows);
}

// All even-size subsets of {1..m}, as sorted index vectors.
std::vector<std::vector<std::size_t>> even_subsets(std::size_t m) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (std::size_t{1} << i)) rows.push_back(i + 1);
    if (rows.size() % 2 == 0) out.push_back(std::move(rows));
  }
  return out;
}

}  // namespace

TEST_CASE("construction rejects non-square and non-skew input") {
  std::vector<std::vector<Rational>> ragged = {{Rational(0), Rational(1)},
                                               {Rational(-1)}};
  CHECK_THROWS_AS(SkewMatrix<Rational>::from_rows(ragged),
                  std::invalid_argument);
  std::vector<std::vector<Rational>> diag = {{Rational(1), Rational(2)},
                                             {Rational(-2), Rational(0)}};
  CHECK_THROWS_AS(SkewMatrix<Rational>::from_rows(diag),
                  std::invalid_argument);
  std::vector<std::vector<Rational>> sym = {{Rational(0), Rational(2)},
                                            {Rational(2), Rational(0)}};
  CHECK_THROWS_AS(SkewMatrix<Rational>::from_rows(sym), std::invalid_argument);
}

TEST_CASE("pfaffian matches the matching-sum oracle on exact scalars") {
  std::mt19937 gen(21);
  for (std::size_t dim : {2u, 4u, 6u, 8u}) {
    for (int rep = 0; rep < 6; ++rep) {
      auto m = random_skew(gen, dim);
      CHECK(sg::pfaffian(m) == oracle::pfaffian_matchings(m.rows()));
    }
  }
}

TEST_CASE("pfaffian squared equals the determinant") {
  std::mt19937 gen(22);
  for (std::size_t dim : {2u, 4u, 6u}) {
    for (int rep = 0; rep < 4; ++rep) {
      auto m = random_skew(gen, dim);
      Rational pf = sg::pfaffian(m);
      CHECK(pf * pf == oracle::determinant_laplace(m.rows()));
    }
  }
}

TEST_CASE("odd dimension gives 0 and the empty matrix gives 1") {
  std::mt19937 gen(23);
  auto odd = random_skew(gen, 5);
  CHECK(sg::pfaffian(odd) == 0);
  auto empty = SkewMatrix<Rational>::from_rows({});
  CHECK(sg::pfaffian(empty) == 1);
}

TEST_CASE("exact elimination beyond the expansion cap stays correct") {
  // dim 14 takes the elimination path for exact scalars; the matching sum
  // is fully independent of both code paths.
  std::mt19937 gen(24);
  auto m = random_skew(gen, 14);
  CHECK(m.dim() > sg::kPfaffianExpansionCap);
  CHECK(sg::pfaffian(m) == oracle::pfaffian_matchings(m.rows()));
}

TEST_CASE("floating-point pfaffian tracks the exact value") {
  std::mt19937 gen(25);
  for (std::size_t dim : {4u, 8u, 12u}) {
    auto m = random_skew(gen, dim);
    std::vector<std::vector<double>> fp(dim, std::vector<double>(dim, 0.0));
    for (std::size_t k = 0; k < dim; ++k)
      for (std::size_t l = 0; l < dim; ++l)
        fp[k][l] = sg::to_double(m.at(k, l));
    double exact = sg::to_double(sg::pfaffian(m));
    double approx = sg::pfaffian(SkewMatrix<double>::from_rows(fp));
    CHECK(std::abs(approx - exact) <= 1e-9 * std::max(1.0, std::abs(exact)));
  }
}

TEST_CASE("principal submatrix validates its index list") {
  auto m = sg::build_epsilon_inverse<Rational>(6);
  std::vector<std::size_t> bad_order = {3, 2};
  CHECK_THROWS_AS(m.principal_submatrix(bad_order), sg::IndexError);
  std::vector<std::size_t> out_of_range = {1, 7};
  CHECK_THROWS_AS(m.principal_submatrix(out_of_range), sg::IndexError);
  std::vector<std::size_t> zero = {0, 1};
  CHECK_THROWS_AS(m.principal_submatrix(zero), sg::IndexError);
  std::vector<std::size_t> odd_count = {1, 2, 3};
  CHECK_THROWS_AS(sg::sub_pfaffian(m, odd_count), sg::IndexError);
  std::vector<std::size_t> none = {};
  CHECK(sg::sub_pfaffian(m, none) == 1);
}

TEST_CASE("the tridiagonal matrix and the staircase matrix are inverses") {
  for (std::size_t dim : {2u, 4u, 6u, 8u, 10u}) {
    auto eps = sg::build_epsilon<Rational>(dim);
    auto inv = sg::build_epsilon_inverse<Rational>(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        Rational acc(0);
        for (std::size_t k = 0; k < dim; ++k)
          acc += eps.at(i, k) * inv.at(k, j);
        CHECK(acc == (i == j ? 1 : 0));
      }
    }
  }
}

TEST_CASE("builders reject odd or empty dimensions") {
  CHECK_THROWS_AS(sg::build_epsilon<Rational>(3), sg::OddDimension);
  CHECK_THROWS_AS(sg::build_epsilon<Rational>(0), sg::OddDimension);
  CHECK_THROWS_AS(sg::build_epsilon_inverse<Rational>(5), sg::OddDimension);
}

TEST_CASE("pfaffians of the two structured families are signs") {
  CHECK(sg::pfaffian(sg::build_epsilon<Rational>(2)) == -1);
  CHECK(sg::pfaffian(sg::build_epsilon<Rational>(4)) == 1);
  CHECK(sg::pfaffian(sg::build_epsilon<Rational>(6)) == -1);
  CHECK(sg::pfaffian(sg::build_epsilon<Rational>(8)) == 1);
  for (std::size_t dim : {2u, 4u, 6u, 8u, 10u})
    CHECK(sg::pfaffian(sg::build_epsilon_inverse<Rational>(dim)) == 1);
}

TEST_CASE("staircase blocks nest: leading submatrices agree across sizes") {
  auto big = sg::build_epsilon_inverse<Rational>(10);
  for (std::size_t dim : {2u, 4u, 6u, 8u}) {
    auto small = sg::build_epsilon_inverse<Rational>(dim);
    std::vector<std::size_t> lead(dim);
    for (std::size_t i = 0; i < dim; ++i) lead[i] = i + 1;
    auto block = big.principal_submatrix(lead);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        CHECK(block.at(i, j) == small.at(i, j));
  }
}

TEST_CASE("every staircase sub-pfaffian is -1, 0, or +1 and is predicted") {
  for (std::size_t m : {2u, 4u, 6u, 8u}) {
    auto inv = sg::build_epsilon_inverse<Rational>(m);
    auto poly = sg::DnPolynomial(static_cast<unsigned>(m));
    for (const auto& rows : even_subsets(m)) {
      Rational pf = sg::sub_pfaffian(inv, rows);
      bool is_sign = pf == Rational(-1) || pf == Rational(0) || pf == Rational(1);
      CHECK(is_sign);
      int predicted = sg::consecutive_pair_pfaffian_sign(rows, m);
      CHECK(pf == Rational(predicted));
      // Coefficient of the cut monomial in D_m is the squared sub-pfaffian.
      std::vector<unsigned> cut;
      std::vector<bool> kept(m + 1, false);
      for (std::size_t r : rows) kept[r] = true;
      for (std::size_t k = 1; k <= m; ++k)
        if (!kept[k]) cut.push_back(static_cast<unsigned>(k));
      CHECK(poly.has_monomial(cut) == (pf != Rational(0)));
    }
  }
}

TEST_CASE("pinned predictor values") {
  std::vector<std::size_t> a = {1, 4};
  CHECK(sg::consecutive_pair_pfaffian_sign(a, 4) == 1);
  std::vector<std::size_t> b = {2, 3};
  CHECK(sg::consecutive_pair_pfaffian_sign(b, 4) == 0);
  std::vector<std::size_t> c = {1, 2, 5, 6};
  CHECK(sg::consecutive_pair_pfaffian_sign(c, 6) == 1);
  std::vector<std::size_t> d = {3, 4};
  CHECK(sg::consecutive_pair_pfaffian_sign(d, 4) == 1);
  std::vector<std::size_t> e = {1, 2};
  CHECK(sg::consecutive_pair_pfaffian_sign(e) == 1);
}

TEST_CASE("the predictor is independent of the ambient dimension") {
  std::vector<std::size_t> rows = {1, 4, 5, 8};
  int base = sg::consecutive_pair_pfaffian_sign(rows, 8);
  CHECK(base == 1);
  CHECK(sg::consecutive_pair_pfaffian_sign(rows, 10) == base);
  CHECK(sg::consecutive_pair_pfaffian_sign(rows, 14) == base);
  auto inv = sg::build_epsilon_inverse<Rational>(14);
  CHECK(sg::sub_pfaffian(inv, rows) == Rational(base));
}

TEST_CASE("predictor rejects malformed input") {
  std::vector<std::size_t> unsorted = {4, 1};
  CHECK_THROWS_AS(sg::consecutive_pair_pfaffian_sign(unsorted, 4),
                  sg::IndexError);
  std::vector<std::size_t> odd_count = {1, 2, 3};
  CHECK_THROWS_AS(sg::consecutive_pair_pfaffian_sign(odd_count, 4),
                  sg::IndexError);
  std::vector<std::size_t> too_big = {1, 6};
  CHECK_THROWS_AS(sg::consecutive_pair_pfaffian_sign(too_big, 4),
                  sg::IndexError);
  std::vector<std::size_t> pair = {1, 2};
  CHECK_THROWS_AS(sg::consecutive_pair_pfaffian_sign(pair, 5),
                  sg::OddDimension);
}

TEST_CASE("pair polynomial enumerates disjoint consecutive pairs") {
  sg::DnPolynomial d2(2);
  REQUIRE(d2.monomials().size() == 2);
  CHECK(d2.monomials()[0].empty());
  CHECK(d2.monomials()[1] == std::vector<unsigned>({1, 2}));
  sg::DnPolynomial d4(4);
  CHECK(d4.has_monomial({}));
  CHECK(d4.has_monomial({1, 2}));
  CHECK(d4.has_monomial({2, 3}));
  CHECK(d4.has_monomial({3, 4}));
  CHECK(d4.has_monomial({1, 2, 3, 4}));
  CHECK_FALSE(d4.has_monomial({1, 3}));
  CHECK_FALSE(d4.has_monomial({2, 4}));
  CHECK_FALSE(d4.has_monomial({1, 4}));
}

TEST_CASE("pair polynomial monomial counts follow the Fibonacci sequence") {
  for (unsigned m = 1; m <= 16; ++m) {
    sg::DnPolynomial poly(m);
    CHECK(poly.monomials().size() == oracle::fibonacci(m + 1));
    std::vector<double> ones(m, 1.0);
    CHECK(poly.evaluate(ones) == doctest::Approx(double(oracle::fibonacci(m + 1))));
  }
  CHECK_THROWS_AS(sg::DnPolynomial(0), std::invalid_argument);
  CHECK_THROWS_AS(sg::DnPolynomial(sg::DnPolynomial::kMaxVars + 1),
                  std::invalid_argument);
}

TEST_CASE("pair polynomial evaluation matches a hand expansion") {
  // D_3 = 1 + x1 x2 + x2 x3.
  sg::DnPolynomial d3(3);
  std::vector<double> v = {2.0, 3.0, 5.0};
  CHECK(d3.evaluate(v) == doctest::Approx(1.0 + 6.0 + 15.0));
  std::vector<double> wrong_size = {1.0, 2.0};
  CHECK_THROWS_AS(d3.evaluate(wrong_size), std::invalid_argument);
}
