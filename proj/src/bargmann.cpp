#include "bargmann.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

#include "errors.hpp"
#include "hermite.hpp"

namespace mehlerkit {

namespace {
constexpr double kPi = std::numbers::pi;
}

GaussHermite::GaussHermite(unsigned n) {
  if (n == 0) throw ConfigError("GaussHermite: need at least one node");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (unsigned k = 1; k < n; ++k) {
    const double b = std::sqrt(k / 2.0);
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  nodes_.resize(n);
  weights_.resize(n);
  const double mu0 = std::sqrt(kPi);  // integral of the weight
  for (unsigned i = 0; i < n; ++i) {
    nodes_[i] = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    weights_[i] = mu0 * v0 * v0;
  }
}

GaussianSample dilated_hermite(unsigned n) {
  // H_n(sqrt2 x) has exact coefficients in Q(sqrt2).
  MultiPoly arg(1);
  arg.add_term(Exps{1}, ScalarQ2::sqrt2());
  MultiPoly p = compose_univariate(hermite_poly(n), arg);
  QuadForm c(1);
  c.set(0, 0, ScalarQ2(1));
  double scale = std::pow(2.0 / kPi, 0.25) /
                 std::sqrt(std::pow(2.0, n) * factorial(n).get_d());
  return GaussianSample{scale, GaussianPoly(std::move(p), std::move(c))};
}

GaussianSample creation_image(const GaussianSample& f, unsigned axis) {
  return GaussianSample{f.scale, gp_creation(f.gp, axis)};
}

SampledFunction SampledFunction::from_sample(GaussianSample s, FnClass tag) {
  SampledFunction f;
  f.tag = tag;
  f.dim = s.dim();
  auto shared = std::make_shared<GaussianSample>(std::move(s));
  f.exact = shared;
  f.evaluator = [shared](const std::vector<double>& x) { return shared->eval(x); };
  return f;
}

SampledFunction SampledFunction::zero(unsigned dim) {
  QuadForm c(dim);
  for (unsigned i = 0; i < dim; ++i) c.set(i, i, ScalarQ2(1));
  GaussianSample s{0.0, GaussianPoly(MultiPoly(dim), c)};
  return from_sample(std::move(s), FnClass::GaussianPolyClass);
}

Cplx bargmann_quadrature(const SampledFunction& f, const CplxVec& z,
                         const QuadratureSpec& spec) {
  if (f.tag == FnClass::Custom)
    throw NumericError("bargmann_quadrature: integrand class not Gaussian-decaying");
  if (z.size() != f.dim)
    throw DimensionError("bargmann_quadrature: dimension mismatch");
  const unsigned d = f.dim;
  GaussHermite gh(spec.nodes_per_axis);

  Cplx znorm2 = 0.0;  // bilinear sum of squares
  for (const Cplx& zj : z) znorm2 += zj * zj;

  std::vector<double> xpoint(d, 0.0);
  std::vector<unsigned> idx(d, 0);
  Cplx total = 0.0;
  while (true) {
    double w = 1.0;
    Cplx dot = 0.0;
    for (unsigned j = 0; j < d; ++j) {
      xpoint[j] = gh.nodes()[idx[j]];
      w *= gh.weights()[idx[j]];
      dot += xpoint[j] * z[j];
    }
    total += w * std::exp(2.0 * dot) * f.evaluator(xpoint);
    unsigned pos = d;
    while (pos-- > 0) {
      if (++idx[pos] < gh.size()) break;
      idx[pos] = 0;
      if (pos == 0) {
        return std::pow(2.0 / kPi, d / 4.0) * std::exp(-0.5 * znorm2) * total;
      }
    }
  }
}

Cplx bargmann_gaussian_closed(const std::vector<double>& a_rowmajor, unsigned dim,
                              const CplxVec& z) {
  if (a_rowmajor.size() != static_cast<std::size_t>(dim) * dim || z.size() != dim)
    throw DimensionError("bargmann_gaussian_closed: dimension mismatch");
  Eigen::MatrixXd ipa(dim, dim);
  for (unsigned i = 0; i < dim; ++i)
    for (unsigned j = 0; j < dim; ++j)
      ipa(i, j) = a_rowmajor[i * dim + j] + (i == j ? 1.0 : 0.0);
  Eigen::LLT<Eigen::MatrixXd> llt(ipa);
  if (llt.info() != Eigen::Success)
    throw NumericError("bargmann_gaussian_closed: I + A not positive definite");
  const double det = ipa.determinant();
  Eigen::MatrixXd cayley =
      (2.0 * ipa.inverse() - Eigen::MatrixXd::Identity(dim, dim));  // (I-A)(I+A)^{-1}
  Cplx quad = 0.0;
  for (unsigned i = 0; i < dim; ++i)
    for (unsigned j = 0; j < dim; ++j) quad += z[i] * cayley(i, j) * z[j];
  return std::pow(2.0 / kPi, dim / 4.0) *
         std::sqrt(std::pow(kPi, static_cast<double>(dim)) / det) *
         std::exp(0.5 * quad);
}

ProbeResult image_constant_probe(const SampledFunction& f, unsigned axis,
                                 const QuadratureSpec& spec) {
  if (!f.exact)
    throw NumericError("image_constant_probe: creation image requires an exact backing");
  if (axis >= f.dim)
    throw DimensionError("image_constant_probe: axis out of range");
  SampledFunction af =
      SampledFunction::from_sample(creation_image(*f.exact, axis), f.tag);

  // w sweeps a fixed complex grid on the probed axis; the other axes sit at 0.25.
  static const std::vector<Cplx> kGrid = {
      {0.5, 0.0},  {1.0, 0.0},   {1.5, 0.0},  {-0.75, 0.0}, {-1.25, 0.0},
      {0.0, 0.5},  {0.0, -1.0},  {0.5, 0.5},  {1.0, -0.5},  {-0.5, 1.0},
      {1.5, 0.5},  {-1.0, -1.0}, {0.25, 0.0}, {0.75, 0.75}, {-1.5, 0.25},
  };

  Cplx num_acc = 0.0;
  double den_acc = 0.0, res_num = 0.0;
  std::vector<Cplx> nums, dens;
  for (const Cplx& w : kGrid) {
    CplxVec z(f.dim, Cplx(0.25, 0.0));
    z[axis] = w;
    const Cplx num = bargmann_quadrature(af, z, spec);
    const Cplx den = w * bargmann_quadrature(f, z, spec);
    nums.push_back(num);
    dens.push_back(den);
    num_acc += num * std::conj(den);
    den_acc += std::norm(den);
  }
  if (den_acc < 1e-20)
    throw NumericError("image_constant_probe: degenerate fit, B_j f vanishes on grid");
  const Cplx c = num_acc / den_acc;
  for (std::size_t i = 0; i < nums.size(); ++i)
    res_num += std::norm(nums[i] - c * dens[i]);
  return ProbeResult{c.real(), std::sqrt(res_num / den_acc)};
}

double decomposition_check(const std::vector<SampledFunction>& factors,
                           const CplxVec& z, const QuadratureSpec& spec) {
  const unsigned d = static_cast<unsigned>(factors.size());
  if (z.size() != d) throw DimensionError("decomposition_check: dimension mismatch");
  for (const SampledFunction& f : factors)
    if (f.dim != 1)
      throw DimensionError("decomposition_check: factors must be univariate");

  SampledFunction product;
  product.tag = factors.front().tag;
  product.dim = d;
  product.evaluator = [factors](const std::vector<double>& x) {
    double v = 1.0;
    for (unsigned j = 0; j < x.size(); ++j) v *= factors[j].evaluator({x[j]});
    return v;
  };
  const Cplx full = bargmann_quadrature(product, z, spec);
  Cplx split = 1.0;
  for (unsigned j = 0; j < d; ++j)
    split *= bargmann_quadrature(factors[j], {z[j]}, spec);
  return std::abs(full - split);
}

RoundtripResult inverse_roundtrip(const SampledFunction& f, double x,
                                  const QuadratureSpec& spec, double radius,
                                  unsigned grid_steps) {
  if (f.dim != 1)
    throw DimensionError("inverse_roundtrip: implemented for d = 1");
  if (grid_steps % 2 == 1) ++grid_steps;  // Simpson needs an even step count
  const unsigned n = grid_steps + 1;
  const double h = 2.0 * radius / grid_steps;

  std::vector<double> simpson(n, 1.0);
  for (unsigned i = 1; i < n - 1; ++i) simpson[i] = (i % 2 == 1) ? 4.0 : 2.0;
  for (double& w : simpson) w *= h / 3.0;

  std::vector<double> grid(n);
  for (unsigned i = 0; i < n; ++i) grid[i] = -radius + i * h;

  // Cache F = B f on the grid, then apply the inverse kernel.
  std::vector<std::vector<Cplx>> F(n, std::vector<Cplx>(n));
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      F[i][j] = bargmann_quadrature(f, {Cplx(grid[i], grid[j])}, spec);

  Cplx acc = 0.0;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      const Cplx zbar(grid[i], -grid[j]);
      const double mod2 = grid[i] * grid[i] + grid[j] * grid[j];
      acc += simpson[i] * simpson[j] *
             std::exp(2.0 * x * zbar - 0.5 * zbar * zbar - mod2) * F[i][j];
    }
  const double reconstructed =
      (std::pow(2.0 / kPi, 0.25) * std::exp(-x * x) * acc / kPi).real();
  return RoundtripResult{std::abs(reconstructed - f.evaluator({x})), radius};
}

namespace {

// Exact inverse of a 3x3 rational matrix via the adjugate.
std::vector<Rational> invert3(const std::vector<Rational>& m) {
  auto at = [&](unsigned i, unsigned j) -> const Rational& { return m[3 * i + j]; };
  auto cof = [&](unsigned i, unsigned j) -> Rational {
    const unsigned r0 = (i + 1) % 3, r1 = (i + 2) % 3;
    const unsigned c0 = (j + 1) % 3, c1 = (j + 2) % 3;
    return at(r0, c0) * at(r1, c1) - at(r0, c1) * at(r1, c0);
  };
  Rational det = at(0, 0) * cof(0, 0) + at(0, 1) * cof(0, 1) + at(0, 2) * cof(0, 2);
  if (det == 0) throw NumericError("gcmf_path_b: I + 2M is singular at this u");
  std::vector<Rational> inv(9);
  for (unsigned i = 0; i < 3; ++i)
    for (unsigned j = 0; j < 3; ++j) inv[3 * i + j] = cof(j, i) / det;
  return inv;
}

}  // namespace

PathBResult gcmf_path_b(const std::vector<double>& x, const std::vector<double>& u,
                        const ShiftVector& r, unsigned n_lhs, PowerVariant pv) {
  if (x.size() != 3 || u.size() != 3 || r.size() != 3)
    throw DimensionError("gcmf_path_b: expects 3-vectors");
  for (double ui : u)
    if (std::abs(ui) > 0.1)
      throw NumericError("gcmf_path_b: |u_i| must stay within the 0.1 margin");

  // Truncated triple sum with Hermite values by recurrence.
  const unsigned rmax = *std::max_element(r.begin(), r.end());
  const unsigned hmax = 2 * n_lhs + rmax;
  std::array<std::vector<double>, 3> hval;
  for (unsigned i = 0; i < 3; ++i) {
    hval[i].resize(hmax + 1);
    hval[i][0] = 1.0;
    if (hmax >= 1) hval[i][1] = 2.0 * x[i];
    for (unsigned k = 1; k < hmax; ++k)
      hval[i][k + 1] = 2.0 * x[i] * hval[i][k] - 2.0 * k * hval[i][k - 1];
  }
  std::array<std::vector<double>, 3> upow;  // u_i^m / m!
  for (unsigned i = 0; i < 3; ++i) {
    upow[i].resize(n_lhs + 1);
    upow[i][0] = 1.0;
    for (unsigned m = 1; m <= n_lhs; ++m) upow[i][m] = upow[i][m - 1] * u[i] / m;
  }
  double lhs = 0.0;
  for (unsigned m = 0; m <= n_lhs; ++m)
    for (unsigned n = 0; n <= n_lhs; ++n)
      for (unsigned p = 0; p <= n_lhs; ++p)
        lhs += hval[0][n + p + r[0]] * hval[1][p + m + r[1]] * hval[2][m + n + r[2]] *
               upow[0][m] * upow[1][n] * upow[2][p];

  // Cayley matrix C = (I-2M)(I+2M)^{-1} at the exactly rationalized u.
  std::array<Rational, 3> uq;
  for (unsigned i = 0; i < 3; ++i) uq[i] = Rational(u[i]);
  std::vector<Rational> iplus(9, Rational(0)), iminus(9, Rational(0));
  auto put = [](std::vector<Rational>& m, unsigned i, unsigned j, const Rational& v) {
    m[3 * i + j] = v;
    m[3 * j + i] = v;
  };
  for (unsigned i = 0; i < 3; ++i) {
    iplus[4 * i] = 1;
    iminus[4 * i] = 1;
  }
  const std::array<std::array<unsigned, 2>, 3> pairs = {{{0, 1}, {0, 2}, {1, 2}}};
  for (const auto& [i, j] : pairs) {
    const unsigned k = 3 - i - j;
    put(iplus, i, j, 2 * uq[k]);
    put(iminus, i, j, -2 * uq[k]);
  }
  const std::vector<Rational> inv = invert3(iplus);
  QuadForm c(3);
  for (unsigned i = 0; i < 3; ++i)
    for (unsigned j = i; j < 3; ++j) {
      Rational v(0);
      for (unsigned k = 0; k < 3; ++k) v += iminus[3 * i + k] * inv[3 * k + j];
      c.set(i, j, ScalarQ2(v));
    }

  GaussianPoly chain = creation_chain_lhs(c, r);

  // Evaluate at x/sqrt2, exactly: x_i/sqrt2 = (x_i/2) sqrt2 in Q(sqrt2).
  std::vector<ScalarQ2> point(3);
  std::vector<ScalarQ2> xq(3);
  for (unsigned i = 0; i < 3; ++i) {
    xq[i] = ScalarQ2(Rational(x[i]));
    point[i] = ScalarQ2(Rational(0), Rational(x[i]) / 2);
  }
  const ScalarQ2 pval = chain.P.eval(point);
  const ScalarQ2 quad_full = c.eval(xq);  // x^T C x; the dilated point needs half

  double delta_u = 1.0 - 4 * (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]) +
                   16 * u[0] * u[1] * u[2];  // det(I + 2M)
  double xnorm2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
  const double sumr = static_cast<double>(r[0] + r[1] + r[2]);
  const double pow2 =
      std::pow(2.0, pv == PowerVariant::HalfSum ? -sumr / 2.0 : -sumr);
  const double reconstruction =
      pow2 / std::sqrt(delta_u) * pval.to_double() *
      std::exp(0.5 * (xnorm2 - quad_full.to_double()));
  return PathBResult{lhs, reconstruction};
}

}  // namespace mehlerkit
