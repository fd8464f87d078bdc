#include "rational.hpp"

#include <stdexcept>

namespace mehlerkit {

Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Integer integer_binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Rational rational_binomial(const Rational& alpha, unsigned k) {
  Rational num(1);
  for (unsigned j = 0; j < k; ++j) num *= alpha - Rational(j);
  return num / Rational(factorial(k));
}

Rational rational_pow(const Rational& q, long e) {
  if (e == 0) return Rational(1);
  if (q == 0 && e < 0) throw std::domain_error("rational_pow: 0^negative");
  const unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), a);
  mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), a);
  r.canonicalize();
  if (e < 0) r = Rational(1) / r;
  return r;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  if (q == 0) return Rational(0);
  const Integer& num = q.get_num();
  const Integer& den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) ||
      !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  Integer sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  return Rational(sn, sd);
}

std::string rational_str(const Rational& q) { return q.get_str(); }

}  // namespace mehlerkit
