#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace mehlerkit {

// Arbitrary-precision rational, always kept in lowest terms by GMP.
using Rational = mpq_class;
using Integer = mpz_class;

Integer factorial(unsigned n);
Integer integer_binomial(unsigned n, unsigned k);

// num/den in lowest terms (the raw two-argument mpq_class constructor does
// not canonicalize).
inline Rational frac(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Generalized binomial coefficient C(alpha, k) = alpha(alpha-1)...(alpha-k+1)/k!.
Rational rational_binomial(const Rational& alpha, unsigned k);

// q^e for any signed exponent (throws std::domain_error on 0^negative).
Rational rational_pow(const Rational& q, long e);

// Exact square root when q is the square of a rational, nullopt otherwise.
std::optional<Rational> rational_sqrt(const Rational& q);

std::string rational_str(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace mehlerkit
