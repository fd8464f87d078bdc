#pragma once

#include <optional>
#include <string>

#include "rational.hpp"

namespace mehlerkit {

// Element of the field Q(sqrt2), stored as a + b*sqrt2 with exact rationals.
// Equality is structural; both components are kept in lowest terms by GMP.
class ScalarQ2 {
 public:
  ScalarQ2() : a_(0), b_(0) {}
  ScalarQ2(long n) : a_(n), b_(0) {}  // NOLINT: implicit by design
  ScalarQ2(Rational a) : a_(std::move(a)), b_(0) {}
  ScalarQ2(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  static ScalarQ2 sqrt2() { return ScalarQ2(Rational(0), Rational(1)); }
  // 1/sqrt2 = sqrt2/2
  static ScalarQ2 inv_sqrt2() { return ScalarQ2(Rational(0), Rational(1, 2)); }

  const Rational& rat() const { return a_; }
  const Rational& irr() const { return b_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_one() const { return a_ == 1 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  // Exact sign of the real value a + b*sqrt2: -1, 0 or +1.
  int sign() const;

  ScalarQ2 operator-() const { return ScalarQ2(-a_, -b_); }
  ScalarQ2& operator+=(const ScalarQ2& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  ScalarQ2& operator-=(const ScalarQ2& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  ScalarQ2& operator*=(const ScalarQ2& o);

  friend ScalarQ2 operator+(ScalarQ2 x, const ScalarQ2& y) { return x += y; }
  friend ScalarQ2 operator-(ScalarQ2 x, const ScalarQ2& y) { return x -= y; }
  friend ScalarQ2 operator*(ScalarQ2 x, const ScalarQ2& y) { return x *= y; }
  friend ScalarQ2 operator/(const ScalarQ2& x, const ScalarQ2& y) {
    return x * y.inverse();
  }

  // (a - b*sqrt2)/(a^2 - 2 b^2); defined for every nonzero element.
  ScalarQ2 inverse() const;
  ScalarQ2 pow(long e) const;

  friend bool operator==(const ScalarQ2& x, const ScalarQ2& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const ScalarQ2& x, const ScalarQ2& y) {
    return !(x == y);
  }

  double to_double() const;

  // Canonical form "a + b*sqrt2", e.g. "3/2", "-sqrt2", "1 - 1/2*sqrt2".
  std::string str() const;

 private:
  Rational a_, b_;
};

// Exact square root inside Q(sqrt2) (nonnegative root), nullopt if the value
// is negative or the root does not lie in the field.
std::optional<ScalarQ2> sqrt_q2(const ScalarQ2& v);

}  // namespace mehlerkit
