#include <cmath>

#include "doctest.h"
#include "bargmann.hpp"

using namespace mehlerkit;

namespace {

const QuadratureSpec kSpec{64};

SampledFunction hermite_fn(unsigned n) {
  return SampledFunction::from_sample(dilated_hermite(n), FnClass::DilatedHermite);
}

SampledFunction plain_gaussian(const Rational& c) {
  QuadForm q(1);
  q.set(0, 0, ScalarQ2(c));
  return SampledFunction::from_sample(GaussianSample{1.0, GaussianPoly::pure(q)},
                                      FnClass::GaussianPolyClass);
}

}  // namespace

TEST_CASE("Gauss-Hermite rule integrates moments exactly") {
  GaussHermite gh(24);
  // odd moments vanish; even: integral of x^{2k} e^{-x^2} = (2k-1)!! sqrt(pi)/2^k
  for (unsigned k = 0; k <= 6; ++k) {
    double even = 0.0, odd = 0.0;
    for (unsigned i = 0; i < gh.size(); ++i) {
      even += gh.weights()[i] * std::pow(gh.nodes()[i], 2.0 * k);
      odd += gh.weights()[i] * std::pow(gh.nodes()[i], 2.0 * k + 1);
    }
    double expected = std::sqrt(M_PI);
    for (unsigned j = 1; j <= k; ++j) expected *= (2.0 * j - 1) / 2.0;
    CHECK(even == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(odd) < 1e-12);
  }
}

TEST_CASE("basis images: B h_n(w) = w^n / sqrt(n!)") {
  CHECK(bargmann_quadrature(hermite_fn(0), {Cplx(0, 0)}, kSpec).real() ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(bargmann_quadrature(hermite_fn(2), {Cplx(0.5, 0)}, kSpec).real() ==
        doctest::Approx(0.25 / std::sqrt(2.0)).epsilon(1e-10));
  CHECK(std::abs(bargmann_quadrature(SampledFunction::zero(1), {Cplx(1.0, 0.3)},
                                     kSpec)) < 1e-14);

  for (unsigned n = 0; n <= 6; ++n) {
    SampledFunction hn = hermite_fn(n);
    for (double re : {-2.0, -0.6, 0.9, 1.7})
      for (double im : {-1.0, 0.0, 0.8}) {
        const Cplx w(re, im);
        if (std::abs(w) > 2.0) continue;
        const Cplx expected = std::pow(w, n) / std::sqrt(factorial(n).get_d());
        CHECK(std::abs(bargmann_quadrature(hn, {w}, kSpec) - expected) < 1e-8);
      }
  }
}

TEST_CASE("closed-form transform of pure Gaussians") {
  // A = 0, z = 0: (2/pi)^{d/4} pi^{d/2}
  for (unsigned d = 1; d <= 2; ++d) {
    std::vector<double> a(d * d, 0.0);
    CplxVec z(d, Cplx(0, 0));
    const double expected =
        std::pow(2.0 / M_PI, d / 4.0) * std::pow(M_PI, d / 2.0);
    CHECK(bargmann_gaussian_closed(a, d, z).real() ==
          doctest::Approx(expected).epsilon(1e-12));
  }
  // d = 1, A = (1), z = 0: (2/pi)^{1/4} (pi/2)^{1/2}
  CHECK(bargmann_gaussian_closed({1.0}, 1, {Cplx(0, 0)}).real() ==
        doctest::Approx(std::pow(2.0 / M_PI, 0.25) * std::sqrt(M_PI / 2.0))
            .epsilon(1e-12));

  // d = 3 grid against the quadrature oracle
  const std::vector<double> a = {0.2, 0.05, 0.0,  //
                                 0.05, 0.3, -0.1,  //
                                 0.0, -0.1, 0.25};
  QuadForm q(3);
  q.set(0, 0, ScalarQ2(frac(1, 5)));
  q.set(1, 1, ScalarQ2(frac(3, 10)));
  q.set(2, 2, ScalarQ2(frac(1, 4)));
  q.set(0, 1, ScalarQ2(frac(1, 20)));
  q.set(1, 2, ScalarQ2(frac(-1, 10)));
  SampledFunction g = SampledFunction::from_sample(
      GaussianSample{1.0, GaussianPoly::pure(q)}, FnClass::GaussianPolyClass);
  for (double re : {-1.0, 0.5, 1.5})
    for (double im : {0.0, 0.7}) {
      CplxVec z = {Cplx(re, im), Cplx(-0.3, im), Cplx(0.8, -im)};
      CHECK(std::abs(bargmann_quadrature(g, z, kSpec) -
                     bargmann_gaussian_closed(a, 3, z)) < 1e-8);
    }

  CHECK_THROWS_AS(bargmann_gaussian_closed({-2.0}, 1, {Cplx(0, 0)}), NumericError);
}

TEST_CASE("image constant is 2 and function-independent") {
  double reference = 0.0;
  for (unsigned n : {0u, 3u}) {
    ProbeResult pr = image_constant_probe(hermite_fn(n), 0, kSpec);
    CHECK(pr.residual < 1e-8);
    CHECK(pr.constant == doctest::Approx(2.0).epsilon(1e-8));
    if (n == 0)
      reference = pr.constant;
    else
      CHECK(std::abs(pr.constant - reference) < 1e-6);
  }
  ProbeResult pg = image_constant_probe(plain_gaussian(Rational(1)), 0, kSpec);
  CHECK(pg.constant == doctest::Approx(2.0).epsilon(1e-8));

  // the constant is per-axis multiplication by 2w, not 2^axis w: probe both
  // axes of a 2-d product Gaussian
  QuadForm q2(2);
  q2.set(0, 0, ScalarQ2(1));
  q2.set(1, 1, ScalarQ2(frac(3, 2)));
  SampledFunction g2 = SampledFunction::from_sample(
      GaussianSample{1.0, GaussianPoly::pure(q2)}, FnClass::GaussianPolyClass);
  for (unsigned axis : {0u, 1u}) {
    ProbeResult pr = image_constant_probe(g2, axis, kSpec);
    CHECK(pr.constant == doctest::Approx(2.0).epsilon(1e-7));
    CHECK(pr.residual < 1e-6);
  }

  SampledFunction custom;
  custom.tag = FnClass::Custom;
  custom.evaluator = [](const std::vector<double>&) { return 0.0; };
  CHECK_THROWS_AS(image_constant_probe(custom, 0, kSpec), NumericError);
}

TEST_CASE("transform of a product factors into one-dimensional transforms") {
  CHECK(decomposition_check({hermite_fn(0), hermite_fn(0)}, {Cplx(0), Cplx(0)},
                            kSpec) < 1e-8);
  for (double re : {-1.0, 0.5, 1.2})
    CHECK(decomposition_check({hermite_fn(1), hermite_fn(2)},
                              {Cplx(re, 0.4), Cplx(-re, 0.2)}, kSpec) < 1e-8);
  CHECK(decomposition_check({SampledFunction::zero(1), hermite_fn(1)},
                            {Cplx(1), Cplx(1)}, kSpec) == doctest::Approx(0.0));
}

TEST_CASE("inverse transform round trip") {
  RoundtripResult r0 = inverse_roundtrip(hermite_fn(0), 0.0, kSpec);
  CHECK(r0.radius == 4.0);
  CHECK(r0.discrepancy < 1e-4);
  for (double x : {-2.0, -0.5, 1.0, 2.0}) {
    RoundtripResult r1 = inverse_roundtrip(hermite_fn(1), x, kSpec);
    CHECK(r1.discrepancy < 1e-4);
  }
  RoundtripResult rz = inverse_roundtrip(SampledFunction::zero(1), 0.7, kSpec);
  CHECK(rz.discrepancy == doctest::Approx(0.0));
}

TEST_CASE("quadrature convergence: doubling the nodes changes nothing") {
  const QuadratureSpec coarse{48}, fine{96};
  SampledFunction h3 = hermite_fn(3);
  for (double re : {-1.5, 0.3, 1.1}) {
    const Cplx w(re, 0.5);
    CHECK(std::abs(bargmann_quadrature(h3, {w}, coarse) -
                   bargmann_quadrature(h3, {w}, fine)) < 1e-10);
  }
}

TEST_CASE("proof-route cross check") {
  PathBResult trivial = gcmf_path_b({0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0, 0, 0},
                                    10, PowerVariant::HalfSum);
  CHECK(trivial.lhs_sum == doctest::Approx(1.0));
  CHECK(trivial.reconstruction == doctest::Approx(1.0));

  const std::vector<double> x = {0.4, -0.2, 0.1};
  const std::vector<double> u = {0.05, 0.03, 0.02};
  PathBResult zero_r = gcmf_path_b(x, u, {0, 0, 0}, 30, PowerVariant::HalfSum);
  CHECK(std::abs(zero_r.lhs_sum - zero_r.reconstruction) < 1e-8);

  // exactly one power-of-2 reading survives once some shift is nonzero
  PathBResult half = gcmf_path_b(x, u, {1, 1, 0}, 30, PowerVariant::HalfSum);
  PathBResult full = gcmf_path_b(x, u, {1, 1, 0}, 30, PowerVariant::FullSum);
  CHECK(std::abs(half.lhs_sum - half.reconstruction) < 1e-8);
  CHECK(std::abs(full.lhs_sum - full.reconstruction) > 1e-4);

  CHECK_THROWS_AS(
      gcmf_path_b(x, {0.3, 0.0, 0.0}, {0, 0, 0}, 10, PowerVariant::HalfSum),
      NumericError);
}

TEST_CASE("quadrature rejects non-decaying class tags") {
  SampledFunction f;
  f.tag = FnClass::Custom;
  f.dim = 1;
  f.evaluator = [](const std::vector<double>& x) { return x[0]; };
  CHECK_THROWS_AS(bargmann_quadrature(f, {Cplx(0, 0)}, kSpec), NumericError);
}
