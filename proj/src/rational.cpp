#include "sg/rational.hpp"

namespace sg {

Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Integer double_factorial(long n) {
  if (n <= 0) return Integer(1);
  Integer r;
  mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

Integer pow2(unsigned long k) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
  return r;
}

Rational rational_pow(const Rational& base, unsigned long exp) {
  Rational r(1);
  Rational b = base;
  unsigned long e = exp;
  while (e > 0) {
    if (e & 1ul) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

std::string to_decimal_string(const Rational& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

}  // namespace sg
