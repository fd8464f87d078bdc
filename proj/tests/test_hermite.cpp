#include "doctest.h"
#include "hermite.hpp"

using namespace mehlerkit;

namespace {

MultiPoly univar(std::initializer_list<std::pair<unsigned, long>> coeffs) {
  MultiPoly p(1);
  for (const auto& [deg, c] : coeffs) p.add_term(Exps{deg}, ScalarQ2(c));
  return p;
}

GaussianPoly gaussian1d(const Rational& c, MultiPoly p) {
  QuadForm q(1);
  q.set(0, 0, ScalarQ2(c));
  return GaussianPoly(std::move(p), q);
}

}  // namespace

TEST_CASE("first Hermite polynomials") {
  CHECK(hermite_poly(0) == univar({{0, 1}}));
  CHECK(hermite_poly(1) == univar({{1, 2}}));
  CHECK(hermite_poly(4) == univar({{4, 16}, {2, -48}, {0, 12}}));
}

TEST_CASE("Rodrigues oracle agrees with the recurrence up to n = 12") {
  CHECK(hermite_rodrigues(0) == univar({{0, 1}}));
  CHECK(hermite_rodrigues(2) == univar({{2, 4}, {0, -2}}));
  HermiteTable table(12);
  for (unsigned n = 0; n <= 12; ++n) CHECK(table[n] == hermite_rodrigues(n));
}

TEST_CASE("leading coefficient and parity") {
  HermiteTable table(9);
  MultiPoly minus_x(1);
  minus_x.add_term(Exps{1}, ScalarQ2(-1));
  for (unsigned n = 0; n <= 9; ++n) {
    CHECK(table[n].terms().rbegin()->second == ScalarQ2(1L << n));
    MultiPoly reflected = compose_univariate(table[n], minus_x);
    CHECK(reflected == (n % 2 == 0 ? table[n] : -table[n]));
  }
}

TEST_CASE("derivative identity D H_n = 2n H_{n-1}") {
  HermiteTable table(12);
  for (unsigned n = 1; n <= 12; ++n)
    CHECK(table[n].derive(0) == table[n - 1].scaled(ScalarQ2(2L * n)));
}

TEST_CASE("operational formula: identity case and first order") {
  GaussianPoly f = gaussian1d(Rational(1), MultiPoly::constant(1, ScalarQ2(1)));
  CHECK(operational_apply(0, f, 0) == f);

  GaussianPoly once = operational_apply(1, f, 0);
  CHECK(once.P == univar({{1, 4}}));  // (-D + 2x) e^{-x^2} = 4x e^{-x^2}
}

TEST_CASE("operational formula equals the repeated creation operator") {
  // m = 3 on x e^{-2x^2}
  GaussianPoly f = gaussian1d(Rational(2), MultiPoly::variable(1, 0));
  CHECK(operational_apply(3, f, 0) == gp_creation_n(f, 0, 3));

  // a small multivariate family, m <= 4
  QuadForm c2(2);
  c2.set(0, 0, ScalarQ2(1));
  c2.set(1, 1, ScalarQ2(frac(3, 2)));
  c2.set(0, 1, ScalarQ2(frac(-1, 2)));
  std::vector<GaussianPoly> family = {
      gaussian1d(Rational(1), univar({{2, 1}, {0, -1}})),
      gaussian1d(frac(1, 2), univar({{1, 1}})),
      GaussianPoly::pure(c2),
      GaussianPoly(MultiPoly::variable(2, 1), c2),
  };
  for (const GaussianPoly& g : family)
    for (unsigned axis = 0; axis < g.dim(); ++axis)
      for (unsigned m = 0; m <= 4; ++m)
        CHECK(operational_apply(m, g, axis) == gp_creation_n(g, axis, m));
}

TEST_CASE("addition formula on Pythagorean tuples") {
  CHECK(addition_formula_check(0, {Rational(3), Rational(4)}));
  CHECK(addition_formula_check(2, {Rational(3), Rational(4)}));
  CHECK(addition_formula_check(1, {Rational(1), Rational(0)}));
  for (unsigned n = 0; n <= 5; ++n) {
    CHECK(addition_formula_check(n, {Rational(3), Rational(4)}));
    CHECK(addition_formula_check(n, {Rational(2), Rational(3), Rational(6)}));
    // sum of squares 2: the radical lives in Q(sqrt2)
    CHECK(addition_formula_check(n, {Rational(1), Rational(1)}));
  }
  // rational but non-representable radical: fine for even n, error for odd
  CHECK(addition_formula_check(4, {Rational(1), Rational(1), Rational(1)}));
  CHECK_THROWS_AS(addition_formula_check(3, {Rational(1), Rational(1), Rational(1)}),
                  RadicalError);
}
