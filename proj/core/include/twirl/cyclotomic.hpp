#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twirl/rational.hpp"

namespace twirl {

// Exact element of a cyclotomic field Q(zeta_m), stored on the Zumbroich
// canonical basis at the true conductor m.  Stored orders lie in
// {1} union {m >= 3 : m % 4 != 2}; an order-1 value is exactly a rational.
// Representations are canonical, so equality is structural comparison.
// Values are immutable in spirit: every operation returns a fresh canonical
// value, and all operations are pure (safe to share across threads).
class Cyclotomic {
 public:
  Cyclotomic() = default;  // zero
  Cyclotomic(long v) : Cyclotomic(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  Cyclotomic(const Rational& r);                   // NOLINT(google-explicit-constructor)

  // zeta_n^k, canonicalized (any integers n >= 1, k).
  static Cyclotomic zeta(std::int64_t n, std::int64_t k = 1);

  // Sum of terms coeff * zeta_order^exp, canonicalized.  This is the general
  // constructor used by the expression parser and by table lifting.
  static Cyclotomic from_terms(
      std::int64_t order,
      const std::vector<std::pair<std::int64_t, Rational>>& terms);

  std::int64_t order() const { return order_; }  // conductor
  const std::map<std::int64_t, Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_rational() const { return order_ == 1; }
  std::optional<Rational> rational_value() const;
  // True iff the value is a rational integer >= 0; returns it.
  std::optional<Integer> nonneg_integer() const;
  // True iff all Zumbroich-basis coefficients are integers (membership in the
  // ring of integers, since the basis is integral).
  bool is_algebraic_integer() const;

  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);

  bool operator==(const Cyclotomic& o) const {
    return order_ == o.order_ && coeffs_ == o.coeffs_;
  }
  bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

  // Deterministic total order (by conductor, then basis data); used only to
  // fix reproducible output orderings.
  static int compare(const Cyclotomic& a, const Cyclotomic& b);

  // Galois automorphism zeta_m -> zeta_m^k; requires gcd(k, order) = 1.
  Cyclotomic galois(std::int64_t k) const;
  // Complex conjugation (= galois(-1)); involutive.
  Cyclotomic conj() const;
  // Exact multiplicative inverse; throws on zero.
  Cyclotomic inverse() const;

  // Numerical embedding with zeta_m = exp(2*pi*i/m).
  std::complex<double> to_complex() const;

  // Canonical expression in the E(n) grammar, e.g. "1/2*E(8)-E(8)^3".
  std::string to_string() const;

  std::size_t hash() const;

 private:
  std::int64_t order_ = 1;
  // exponent -> nonzero coefficient; exponents restricted to the Zumbroich
  // basis of Q(zeta_order).
  std::map<std::int64_t, Rational> coeffs_;
};

struct CyclotomicHash {
  std::size_t operator()(const Cyclotomic& c) const { return c.hash(); }
};

}  // namespace twirl
