#include "scalar_q2.hpp"

#include <cmath>
#include <stdexcept>

namespace mehlerkit {

ScalarQ2& ScalarQ2::operator*=(const ScalarQ2& o) {
  if (b_ == 0 && o.b_ == 0) {  // common rational fast path
    a_ *= o.a_;
    return *this;
  }
  Rational a = a_ * o.a_ + 2 * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

ScalarQ2 ScalarQ2::inverse() const {
  if (is_zero()) throw std::domain_error("ScalarQ2: inverse of zero");
  Rational norm = a_ * a_ - 2 * b_ * b_;  // nonzero since sqrt2 is irrational
  return ScalarQ2(a_ / norm, -b_ / norm);
}

ScalarQ2 ScalarQ2::pow(long e) const {
  ScalarQ2 base = e < 0 ? inverse() : *this;
  unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
  ScalarQ2 r(1);
  while (n) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

int ScalarQ2::sign() const {
  const int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // opposite signs: compare a^2 with 2 b^2
  const int c = cmp(a_ * a_, 2 * b_ * b_);
  return c == 0 ? 0 : (c > 0 ? sa : sb);
}

double ScalarQ2::to_double() const {
  return a_.get_d() + b_.get_d() * std::sqrt(2.0);
}

std::string ScalarQ2::str() const {
  if (b_ == 0) return rational_str(a_);
  std::string irr;
  if (b_ == 1)
    irr = "sqrt2";
  else if (b_ == -1)
    irr = "-sqrt2";
  else
    irr = rational_str(b_) + "*sqrt2";
  if (a_ == 0) return irr;
  if (b_ > 0) return rational_str(a_) + " + " + (b_ == 1 ? "sqrt2" : rational_str(b_) + "*sqrt2");
  return rational_str(a_) + " - " + (b_ == -1 ? "sqrt2" : rational_str(-b_) + "*sqrt2");
}

std::optional<ScalarQ2> sqrt_q2(const ScalarQ2& v) {
  if (v.is_zero()) return ScalarQ2(0);
  if (v.sign() < 0) return std::nullopt;
  const Rational& a = v.rat();
  const Rational& b = v.irr();
  if (b == 0) {
    if (auto p = rational_sqrt(a)) return ScalarQ2(*p);
    if (auto q = rational_sqrt(a / 2)) return ScalarQ2(Rational(0), *q);
    return std::nullopt;
  }
  // Solve (p + q*sqrt2)^2 = a + b*sqrt2: p^2 + 2q^2 = a, 2pq = b.
  auto disc = rational_sqrt(a * a - 2 * b * b);
  if (!disc) return std::nullopt;
  for (int s : {+1, -1}) {
    Rational p2 = (a + Rational(s) * *disc) / 2;
    auto p = rational_sqrt(p2);
    if (!p || *p == 0) continue;
    Rational q = b / (2 * *p);
    ScalarQ2 root(*p, q);
    if (root * root == v && root.sign() > 0) return root;
    root = -root;
    if (root * root == v && root.sign() > 0) return root;
  }
  return std::nullopt;
}

}  // namespace mehlerkit
