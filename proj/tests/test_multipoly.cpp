#include <random>

#include "doctest.h"
#include "multipoly.hpp"

using namespace mehlerkit;

namespace {

MultiPoly random_poly(std::mt19937_64& eng, unsigned nvars, unsigned max_deg) {
  MultiPoly p(nvars);
  const unsigned terms = 1 + eng() % 6;
  for (unsigned t = 0; t < terms; ++t) {
    Exps e(nvars, 0);
    for (unsigned i = 0; i < nvars; ++i) e[i] = eng() % (max_deg + 1);
    long num = static_cast<long>(eng() % 11) - 5;
    p.add_term(std::move(e), ScalarQ2(frac(num, 1 + eng() % 4)));
  }
  return p;
}

std::vector<ScalarQ2> random_point(std::mt19937_64& eng, unsigned nvars) {
  std::vector<ScalarQ2> pt;
  for (unsigned i = 0; i < nvars; ++i)
    pt.push_back(ScalarQ2(frac(static_cast<long>(eng() % 9) - 4, 1 + eng() % 3)));
  return pt;
}

}  // namespace

TEST_CASE("basic ring arithmetic") {
  MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  MultiPoly sq = (x + y) * (x + y);
  MultiPoly expected(2);
  expected.add_term({2, 0}, ScalarQ2(1));
  expected.add_term({1, 1}, ScalarQ2(2));
  expected.add_term({0, 2}, ScalarQ2(1));
  CHECK(sq == expected);
  CHECK((sq - sq).is_zero());
  CHECK((x * y).total_degree() == 2);
  CHECK(x.degree_in(0) == 1);
  CHECK(x.degree_in(1) == 0);
}

TEST_CASE("no stored zero coefficients") {
  MultiPoly p(1);
  p.add_term({1}, ScalarQ2(5));
  p.add_term({1}, ScalarQ2(-5));
  CHECK(p.is_zero());
  CHECK(p.terms().empty());
}

TEST_CASE("evaluation commutes with ring operations") {
  std::mt19937_64 eng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const unsigned nvars = 1 + eng() % 3;
    MultiPoly p = random_poly(eng, nvars, 3), q = random_poly(eng, nvars, 3);
    auto pt = random_point(eng, nvars);
    CHECK((p + q).eval(pt) == p.eval(pt) + q.eval(pt));
    CHECK((p * q).eval(pt) == p.eval(pt) * q.eval(pt));
    CHECK((-p).eval(pt) == -(p.eval(pt)));
  }
}

TEST_CASE("derivative rules") {
  MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  MultiPoly p = x * x * y + y;  // d/dx = 2xy, d/dy = x^2 + 1
  CHECK(p.derive(0) == x * y.scaled(ScalarQ2(2)));
  CHECK(p.derive(1) == x * x + MultiPoly::constant(2, ScalarQ2(1)));

  std::mt19937_64 eng(5);
  for (int trial = 0; trial < 40; ++trial) {
    MultiPoly a = random_poly(eng, 2, 3), b = random_poly(eng, 2, 3);
    // Leibniz rule
    CHECK((a * b).derive(0) == a.derive(0) * b + a * b.derive(0));
  }
}

TEST_CASE("univariate composition by Horner") {
  // p(y) = 4y^2 - 2 composed with x1 + x2
  MultiPoly p(1);
  p.add_term({2}, ScalarQ2(4));
  p.add_term({0}, ScalarQ2(-2));
  MultiPoly arg = MultiPoly::variable(2, 0) + MultiPoly::variable(2, 1);
  MultiPoly got = compose_univariate(p, arg);
  MultiPoly expected = arg * arg;
  expected = expected.scaled(ScalarQ2(4));
  expected.add_term({0, 0}, ScalarQ2(-2));
  CHECK(got == expected);

  CHECK_THROWS_AS(compose_univariate(arg, p), ArityError);
}

TEST_CASE("zero-variable polynomials behave as scalars") {
  MultiPoly c = MultiPoly::constant(0, ScalarQ2(frac(7, 3)));
  CHECK(c.constant_term() == ScalarQ2(frac(7, 3)));
  CHECK((c * c).constant_term() == ScalarQ2(frac(49, 9)));
}

TEST_CASE("canonical graded-lex printing") {
  MultiPoly p(1);
  p.add_term({4}, ScalarQ2(16));
  p.add_term({2}, ScalarQ2(-48));
  p.add_term({0}, ScalarQ2(12));
  CHECK(p.str() == "16*x1^4 - 48*x1^2 + 12");

  MultiPoly q(2);
  q.add_term({1, 0}, ScalarQ2(Rational(1), frac(1, 2)));
  q.add_term({0, 1}, ScalarQ2(-1));
  CHECK(q.str() == "(1 + 1/2*sqrt2)*x1 - x2");
  CHECK(MultiPoly(3).str() == "0");
}

TEST_CASE("dimension errors") {
  MultiPoly a(2), b(3);
  CHECK_THROWS_AS(a + b, DimensionError);
  CHECK_THROWS_AS(a * b, DimensionError);
  CHECK_THROWS_AS(a.derive(5), DimensionError);
  CHECK_THROWS_AS(MultiPoly::variable(2, 2), DimensionError);
}

TEST_CASE("double-coefficient instantiation") {
  DoublePoly x = DoublePoly::variable(1, 0);
  DoublePoly p = x * x + x.scaled(3.0);
  CHECK(p.eval({2.0}) == doctest::Approx(10.0));
  MultiPoly q(1);
  q.add_term({1}, ScalarQ2::sqrt2());
  CHECK(eval_double(q, {1.0}) == doctest::Approx(std::sqrt(2.0)));
}
