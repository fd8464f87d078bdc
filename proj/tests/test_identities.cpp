#include <algorithm>

#include "doctest.h"
#include "hermite.hpp"
#include "identities.hpp"

using namespace mehlerkit;

namespace {

const IdentityVariant& winning(Family f, const std::string& name) {
  auto v = variant_by_name(f, name);
  REQUIRE(v.has_value());
  static IdentityVariant slot;
  slot = *v;
  return slot;
}

MultiPoly embedded(const MultiPoly& univar, unsigned nvars, unsigned axis) {
  return compose_univariate(univar, MultiPoly::variable(nvars, axis));
}

}  // namespace

TEST_CASE("oracle side: first coefficients") {
  IdentityInstance mehler{Family::Mehler, {}, 0};
  CHECK(lhs_series(mehler).constant_coeff() ==
        MultiPoly::constant(2, ScalarQ2(1)));

  IdentityInstance mehler2{Family::Mehler, {}, 2};
  MultiPoly fourx1x2 = embedded(hermite_poly(1), 2, 0) * embedded(hermite_poly(1), 2, 1);
  CHECK(lhs_series(mehler2).coeff(Exps{1}) == fourx1x2);

  IdentityInstance g{Family::Gcmf, {1, 0, 0}, 2};
  CHECK(lhs_series(g).constant_coeff() == embedded(hermite_poly(1), 3, 0));
}

TEST_CASE("bilinear closed side: degenerate coefficients") {
  IdentityInstance mehler{Family::Mehler, {}, 2};
  TruncSeries rhs = rhs_series(mehler, winning(Family::Mehler, "classical"));
  CHECK(rhs.constant_coeff() == MultiPoly::constant(2, ScalarQ2(1)));
  CHECK(rhs.coeff(Exps{1}) ==
        embedded(hermite_poly(1), 2, 0) * embedded(hermite_poly(1), 2, 1));

  IdentityInstance cb{Family::CarlitzBilinear, {1, 0}, 2};
  TruncSeries rhs2 = rhs_series(cb, winning(Family::CarlitzBilinear, "den=1-4t^2"));
  CHECK(rhs2.constant_coeff() == embedded(hermite_poly(1), 2, 0));
}

TEST_CASE("trilinear closed side: low-order coefficients match the oracle") {
  IdentityInstance ct{Family::CarlitzTrilinear, {}, 2};
  TruncSeries rhs = rhs_series(ct, winning(Family::CarlitzTrilinear, "as-printed"));
  TruncSeries lhs = lhs_series(ct);
  CHECK(rhs.constant_coeff() == MultiPoly::constant(3, ScalarQ2(1)));
  CHECK(rhs.coeff(Exps{0, 0, 1}) == lhs.coeff(Exps{0, 0, 1}));
  CHECK(lhs.coeff(Exps{0, 0, 1}) ==
        embedded(hermite_poly(1), 3, 0) * embedded(hermite_poly(1), 3, 1));
}

TEST_CASE("mehler verifies exactly at order 8") {
  IdentityInstance inst{Family::Mehler, {}, 8};
  VerificationReport rep = verify_identity(inst, variants_for(Family::Mehler));
  REQUIRE(rep.matched_variant.has_value());
  CHECK(*rep.matched_variant == "classical");
}

TEST_CASE("bilinear denominator variant is decided by the oracle") {
  IdentityInstance inst{Family::CarlitzBilinear, {2, 1}, 8};
  VerificationReport rep =
      verify_identity(inst, variants_for(Family::CarlitzBilinear));
  REQUIRE(rep.variants.size() == 2);
  for (const VariantOutcome& v : rep.variants) {
    if (v.name == "den=1-4t^2") {
      CHECK(v.matched);
    } else {
      CHECK(!v.matched);
      REQUIRE(v.mismatch.has_value());
      CHECK(v.mismatch->lhs != v.mismatch->rhs);
    }
  }
}

TEST_CASE("carlitz trilinear verifies exactly at order 5") {
  IdentityInstance inst{Family::CarlitzTrilinear, {}, 5};
  VerificationReport rep =
      verify_identity(inst, variants_for(Family::CarlitzTrilinear));
  CHECK(rep.matched_variant.has_value());
}

TEST_CASE("srivastava variant combination is unique over an asymmetric instance") {
  IdentityInstance inst{Family::Srivastava, {2, 1}, 4};
  VerificationReport rep = verify_identity(inst, variants_for(Family::Srivastava));
  std::vector<std::string> matched;
  for (const VariantOutcome& v : rep.variants)
    if (v.matched) matched.push_back(v.name);
  REQUIRE(matched.size() == 1);
  CHECK(matched.front() == "cpl=u3-2u1u2,bind=(r1,r2),root=pooled");
}

TEST_CASE("gcmf: balanced shifts tie the k-sum reading, unbalanced break it") {
  IdentityInstance balanced{Family::Gcmf, {1, 1, 1}, 3};
  VerificationReport rep = verify_identity(balanced, variants_for(Family::Gcmf));
  std::vector<std::string> matched;
  for (const VariantOutcome& v : rep.variants)
    if (v.matched) matched.push_back(v.name);
  // the extra box terms vanish identically for balanced shifts
  REQUIRE(matched.size() == 2);
  CHECK(std::find(matched.begin(), matched.end(),
                  "delta=pooled,kfac=scaled-shift,ksum=box") != matched.end());
  CHECK(std::find(matched.begin(), matched.end(),
                  "delta=pooled,kfac=scaled-shift,ksum=min") != matched.end());

  IdentityInstance unbalanced{Family::Gcmf, {2, 2, 1}, 3};
  VerificationReport rep2 = verify_identity(unbalanced, variants_for(Family::Gcmf));
  matched.clear();
  for (const VariantOutcome& v : rep2.variants)
    if (v.matched) matched.push_back(v.name);
  REQUIRE(matched.size() == 1);
  CHECK(matched.front() == "delta=pooled,kfac=scaled-shift,ksum=box");
}

TEST_CASE("reduction chain between families") {
  // gcmf with r3 = 0 against srivastava, both under their winning readings
  const IdentityVariant gv = winning(Family::Gcmf, "delta=pooled,kfac=scaled-shift,ksum=box");
  const IdentityVariant sv =
      winning(Family::Srivastava, "cpl=u3-2u1u2,bind=(r1,r2),root=pooled");
  for (unsigned r1 = 0; r1 <= 1; ++r1)
    for (unsigned r2 = 0; r2 <= 1; ++r2) {
      IdentityInstance g{Family::Gcmf, {r1, r2, 0}, 3};
      IdentityInstance s{Family::Srivastava, {r1, r2}, 3};
      CHECK(rhs_series(g, gv) == rhs_series(s, sv));
    }

  // gcmf with zero shifts is the trilinear kernel
  IdentityInstance g0{Family::Gcmf, {0, 0, 0}, 4};
  IdentityInstance t0{Family::CarlitzTrilinear, {}, 4};
  CHECK(rhs_series(g0, gv) ==
        rhs_series(t0, winning(Family::CarlitzTrilinear, "as-printed")));

  // bilinear with zero shifts is Mehler
  IdentityInstance b0{Family::CarlitzBilinear, {0, 0}, 8};
  IdentityInstance m0{Family::Mehler, {}, 8};
  CHECK(rhs_series(b0, winning(Family::CarlitzBilinear, "den=1-4t^2")) ==
        rhs_series(m0, winning(Family::Mehler, "classical")));
}

TEST_CASE("oracle side is invariant under cyclic relabeling") {
  const std::vector<unsigned> cycle = {1, 2, 0};  // variable i -> i+1
  for (const ShiftVector r : {ShiftVector{1, 2, 0}, ShiftVector{0, 1, 2}}) {
    IdentityInstance inst{Family::Gcmf, r, 3};
    TruncSeries rotated = lhs_series(inst).permuted(cycle, cycle);
    IdentityInstance image{Family::Gcmf, {r[2], r[0], r[1]}, 3};
    CHECK(rotated == lhs_series(image));
  }
}

TEST_CASE("setting u1 = u2 = 0 collapses the triple sum to the bilinear one") {
  const ShiftVector r = {2, 1, 1};
  const unsigned N = 4;
  IdentityInstance inst{Family::Gcmf, r, N};
  TruncSeries collapsed = lhs_series(inst).subst_u_zero({0, 1});

  // independent construction: sum_p H_{p+r1}(x1) H_{p+r2}(x2) H_{r3}(x3) u3^p/p!
  HermiteTable table(N + 2);
  TruncSeries expected(3, 3, N);
  for (unsigned p = 0; p <= N; ++p) {
    MultiPoly c = embedded(table[p + r[0]], 3, 0) * embedded(table[p + r[1]], 3, 1) *
                  embedded(table[r[2]], 3, 2);
    expected.set_coeff(Exps{0, 0, p},
                       c.scaled(ScalarQ2(Rational(1) / Rational(factorial(p)))));
  }
  CHECK(collapsed == expected);
}

TEST_CASE("u^0 coefficient of every oracle side is the product of shifted Hermites") {
  IdentityInstance g{Family::Gcmf, {2, 0, 1}, 2};
  CHECK(lhs_series(g).constant_coeff() ==
        embedded(hermite_poly(2), 3, 0) * embedded(hermite_poly(1), 3, 2));
  IdentityInstance s{Family::Srivastava, {1, 2}, 2};
  CHECK(lhs_series(s).constant_coeff() ==
        embedded(hermite_poly(1), 3, 0) * embedded(hermite_poly(2), 3, 1));
  IdentityInstance b{Family::CarlitzBilinear, {3, 1}, 2};
  CHECK(lhs_series(b).constant_coeff() ==
        embedded(hermite_poly(3), 2, 0) * embedded(hermite_poly(1), 2, 1));
}

TEST_CASE("oracle coefficients stay rational") {
  IdentityInstance inst{Family::Gcmf, {1, 1, 1}, 3};
  for (const auto& [e, p] : lhs_series(inst).coeffs())
    for (const auto& [ex, c] : p.terms()) CHECK(c.irr() == 0);
}

TEST_CASE("first mismatch reports the lexicographically smallest exponent") {
  TruncSeries a(2, 0, 2), b(2, 0, 2);
  const MultiPoly one = MultiPoly::constant(0, ScalarQ2(1));
  a.set_coeff(Exps{1, 0}, one);
  a.set_coeff(Exps{0, 1}, one);
  b.set_coeff(Exps{1, 0}, one.scaled(ScalarQ2(2)));
  b.set_coeff(Exps{0, 2}, one);
  auto m = first_mismatch(a, b);
  REQUIRE(m.has_value());
  CHECK(m->u_exponent == Exps{0, 1});  // lex-smaller than (0,2) and (1,0)
  CHECK(m->lhs == one);
  CHECK(m->rhs.is_zero());
  CHECK(!first_mismatch(a, a).has_value());
}

TEST_CASE("budget exhaustion reports partial progress") {
  IdentityInstance inst{Family::Mehler, {}, 6};
  VerifyLimits limits;
  limits.max_terms = 3;
  VerificationReport rep = verify_identity(inst, variants_for(Family::Mehler), limits);
  CHECK(rep.budget_exceeded);
  CHECK(!rep.matched_variant.has_value());
  CHECK(!rep.budget_note.empty());
}

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(validate_instance(IdentityInstance{Family::Gcmf, {1, 1}, 3}),
                  ConfigError);
  CHECK_THROWS_AS(validate_instance(IdentityInstance{Family::Mehler, {1}, 3}),
                  ConfigError);
  CHECK_NOTHROW(validate_instance(IdentityInstance{Family::Srivastava, {0, 0}, 3}));
}

TEST_CASE("cayley matrix identity") {
  CHECK(cayley_check(/*corner_printed=*/false, 6));
  CHECK(!cayley_check(/*corner_printed=*/true, 6));
  // both readings coincide below the u3^2 order
  CHECK(cayley_check(true, 1));
}

TEST_CASE("variant catalogs are deterministic") {
  CHECK(variants_for(Family::Mehler).size() == 1);
  CHECK(variants_for(Family::CarlitzBilinear).size() == 2);
  CHECK(variants_for(Family::Srivastava).size() == 8);
  CHECK(variants_for(Family::Gcmf).size() == 16);
  CHECK(!variant_by_name(Family::Gcmf, "nope").has_value());
}
