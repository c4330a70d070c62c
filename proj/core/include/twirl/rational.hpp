#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace twirl {

// Exact arbitrary-precision rational, always in lowest terms with positive
// denominator (gmp keeps mpq_class canonical through arithmetic; values built
// from raw parts must go through make_rational).
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(long num, long den = 1) {
  return make_rational(Integer(num), Integer(den));
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline std::string rational_to_string(const Rational& r) { return r.get_str(); }

}  // namespace twirl
