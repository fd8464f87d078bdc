#include <random>

#include "doctest.h"
#include "scalar_q2.hpp"

using namespace mehlerkit;

namespace {

ScalarQ2 random_scalar(std::mt19937_64& eng) {
  auto small = [&] {
    long num = static_cast<long>(eng() % 21) - 10;
    long den = 1 + static_cast<long>(eng() % 7);
    return frac(num, den);
  };
  return ScalarQ2(small(), small());
}

}  // namespace

TEST_CASE("field axioms on randomized inputs") {
  std::mt19937_64 eng(20240811);
  for (int trial = 0; trial < 200; ++trial) {
    ScalarQ2 x = random_scalar(eng), y = random_scalar(eng), z = random_scalar(eng);
    CHECK((x + y) + z == x + (y + z));
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(x + (-x) == ScalarQ2(0));
    if (!x.is_zero()) CHECK(x * x.inverse() == ScalarQ2(1));
  }
}

TEST_CASE("inverse of a + b sqrt2 is (a - b sqrt2)/(a^2 - 2b^2)") {
  ScalarQ2 v(Rational(3), frac(1, 2));
  Rational norm = Rational(9) - 2 * frac(1, 4);
  CHECK(v.inverse() == ScalarQ2(Rational(3) / norm, frac(-1, 2) / norm));
  CHECK_THROWS(ScalarQ2(0).inverse());
}

TEST_CASE("structural equality and lowest terms") {
  CHECK(ScalarQ2(frac(2, 4)) == ScalarQ2(frac(1, 2)));
  CHECK(ScalarQ2(frac(1, 2)) != ScalarQ2(frac(1, 2), frac(1, 100)));
}

TEST_CASE("exact sign") {
  CHECK(ScalarQ2(0).sign() == 0);
  CHECK(ScalarQ2(Rational(3), Rational(-2)).sign() > 0);  // 9 > 8
  CHECK(ScalarQ2(Rational(-3), Rational(2)).sign() < 0);
  CHECK(ScalarQ2(Rational(2), Rational(-3)).sign() < 0);  // 4 < 18
  CHECK(ScalarQ2(Rational(-1), Rational(1)).sign() > 0);  // sqrt2 > 1
  CHECK(ScalarQ2::sqrt2().sign() > 0);
}

TEST_CASE("square roots inside the field") {
  CHECK(sqrt_q2(ScalarQ2(4)) == ScalarQ2(2));
  CHECK(sqrt_q2(ScalarQ2(2)) == ScalarQ2::sqrt2());
  CHECK(sqrt_q2(ScalarQ2(frac(9, 4))) == ScalarQ2(frac(3, 2)));
  CHECK(sqrt_q2(ScalarQ2(frac(9, 8))) == ScalarQ2(Rational(0), frac(3, 4)));
  // (1 + sqrt2)^2 = 3 + 2 sqrt2
  CHECK(sqrt_q2(ScalarQ2(Rational(3), Rational(2))) ==
        ScalarQ2(Rational(1), Rational(1)));
  CHECK(!sqrt_q2(ScalarQ2(3)).has_value());
  CHECK(!sqrt_q2(ScalarQ2(-1)).has_value());
  CHECK(!sqrt_q2(ScalarQ2(Rational(0), Rational(1))).has_value());  // sqrt(sqrt2)
  CHECK(sqrt_q2(ScalarQ2(0)) == ScalarQ2(0));

  std::mt19937_64 eng(7);
  for (int trial = 0; trial < 100; ++trial) {
    ScalarQ2 x = random_scalar(eng);
    auto root = sqrt_q2(x * x);
    REQUIRE(root.has_value());
    CHECK(*root * *root == x * x);
    CHECK(root->sign() >= 0);
  }
}

TEST_CASE("powers") {
  ScalarQ2 v(Rational(1), Rational(1));
  CHECK(v.pow(2) == ScalarQ2(Rational(3), Rational(2)));
  CHECK(v.pow(0) == ScalarQ2(1));
  CHECK(v.pow(-1) == v.inverse());
  CHECK(ScalarQ2::inv_sqrt2() * ScalarQ2::sqrt2() == ScalarQ2(1));
}

TEST_CASE("canonical printing a + b*sqrt2") {
  CHECK(ScalarQ2(frac(3, 2)).str() == "3/2");
  CHECK(ScalarQ2(0).str() == "0");
  CHECK(ScalarQ2::sqrt2().str() == "sqrt2");
  CHECK(ScalarQ2(Rational(0), Rational(-1)).str() == "-sqrt2");
  CHECK(ScalarQ2(Rational(1), frac(-1, 2)).str() == "1 - 1/2*sqrt2");
  CHECK(ScalarQ2(Rational(-2), Rational(3)).str() == "-2 + 3*sqrt2");
  CHECK(ScalarQ2(Rational(0), frac(2, 3)).str() == "2/3*sqrt2");
}

TEST_CASE("rational helpers") {
  CHECK(factorial(6) == 720);
  CHECK(integer_binomial(7, 3) == 35);
  CHECK(rational_binomial(frac(-1, 2), 2) == frac(3, 8));
  CHECK(rational_binomial(Rational(3), 5) == 0);
  CHECK(rational_pow(frac(2, 3), -2) == frac(9, 4));
  CHECK(*rational_sqrt(frac(49, 16)) == frac(7, 4));
  CHECK(!rational_sqrt(frac(1, 2)).has_value());
}
