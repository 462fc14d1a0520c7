#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <string>

namespace sg {

// Arbitrary-precision rational, always canonical (lowest terms, positive
// denominator). mpq_class keeps arithmetic results canonical; only direct
// numerator/denominator construction needs an explicit canonicalize().
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Integer factorial(unsigned long n);

// n!! for n >= -1, with (-1)!! = 0!! = 1.
Integer double_factorial(long n);

Integer pow2(unsigned long k);

Rational rational_pow(const Rational& base, unsigned long exp);

inline double to_double(const Rational& v) { return v.get_d(); }

// "p" for integers, "p/q" otherwise; always lossless.
std::string to_decimal_string(const Rational& v);

// Traits shared by the generic linear algebra and symmetric-function code.
// Exact scalars get exact pivoting and equality; floating scalars get
// magnitude-based pivoting.
template <typename S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool is_exact = true;
  static Rational from_long(long v) { return Rational(v); }
  static double magnitude(const Rational& v) { return std::abs(v.get_d()); }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool is_exact = false;
  static double from_long(long v) { return static_cast<double>(v); }
  static double magnitude(double v) { return std::abs(v); }
};

template <>
struct ScalarTraits<std::complex<double>> {
  static constexpr bool is_exact = false;
  static std::complex<double> from_long(long v) {
    return {static_cast<double>(v), 0.0};
  }
  static double magnitude(const std::complex<double>& v) { return std::abs(v); }
};

template <typename S>
S scalar_cast(const Rational& v);

template <>
inline Rational scalar_cast<Rational>(const Rational& v) {
  return v;
}

template <>
inline double scalar_cast<double>(const Rational& v) {
  return v.get_d();
}

template <>
inline std::complex<double> scalar_cast<std::complex<double>>(
    const Rational& v) {
  return {v.get_d(), 0.0};
}

}  // namespace sg
