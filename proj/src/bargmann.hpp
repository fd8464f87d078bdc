#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "gaussian_ops.hpp"

namespace mehlerkit {

using Cplx = std::complex<double>;
using CplxVec = std::vector<Cplx>;

// Gauss-Hermite nodes and weights for the weight e^{-x^2} on R, computed by
// Golub-Welsch from the Jacobi matrix.  Exact for polynomial integrands of
// degree <= 2n-1 against the weight.
class GaussHermite {
 public:
  explicit GaussHermite(unsigned n);
  unsigned size() const { return static_cast<unsigned>(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<double> nodes_, weights_;
};

struct QuadratureSpec {
  unsigned nodes_per_axis = 64;  // >= 16 for acceptance runs
};

// scale * P(x) e^{-x^T C x} with the polynomial part kept exact; the only
// floating-point ingredient is the overall scale.
struct GaussianSample {
  double scale = 1.0;
  GaussianPoly gp;

  unsigned dim() const { return gp.dim(); }
  double eval(const std::vector<double>& x) const { return scale * gp.eval(x); }
};

// n-th dilated Hermite function h_n(x) = (2/pi)^{1/4} e^{-x^2} H_n(sqrt2 x)/sqrt(2^n n!).
GaussianSample dilated_hermite(unsigned n);

// A_j^* applied to a Gaussian sample (exact inner part, same scale).
GaussianSample creation_image(const GaussianSample& f, unsigned axis);

enum class FnClass { GaussianPolyClass, DilatedHermite, Custom };

struct SampledFunction {
  FnClass tag = FnClass::Custom;
  unsigned dim = 1;
  std::function<double(const std::vector<double>&)> evaluator;
  std::shared_ptr<const GaussianSample> exact;  // set for non-custom tags

  static SampledFunction from_sample(GaussianSample s, FnClass tag);
  static SampledFunction zero(unsigned dim);
};

// Bf(z) = (2/pi)^{d/4} e^{-||z||^2/2} \int e^{2 x.z - |x|^2} f(x) dx by
// tensor-product quadrature with the Gaussian weight absorbed.  ||z||^2 is the
// bilinear sum of squares.  Rejects functions without Gaussian decay.
Cplx bargmann_quadrature(const SampledFunction& f, const CplxVec& z,
                         const QuadratureSpec& spec);

// Closed form for B of e^{-x^T A x}:
//   (2/pi)^{d/4} (pi^d det(I+A)^{-1})^{1/2} e^{(1/2) z^T (I-A)(I+A)^{-1} z}.
// A is given row-major; I + A must be positive definite.
Cplx bargmann_gaussian_closed(const std::vector<double>& a_rowmajor, unsigned dim,
                              const CplxVec& z);

struct ProbeResult {
  double constant = 0.0;   // fitted c in B_j(A_j^* f)(w) = c w B_j f(w)
  double residual = 0.0;   // relative RMS residual of the fit
};

ProbeResult image_constant_probe(const SampledFunction& f, unsigned axis,
                                 const QuadratureSpec& spec);

// |B(prod f_j)(z) - prod B_j f_j(z_j)| for a product-form input.
double decomposition_check(const std::vector<SampledFunction>& factors,
                           const CplxVec& z, const QuadratureSpec& spec);

struct RoundtripResult {
  double discrepancy = 0.0;
  double radius = 0.0;  // complex-domain truncation radius used
};

// |B^{-1}(B f)(x) - f(x)| with the inverse computed over the truncated square
// [-R, R]^2 per complex axis (d = 1).  The truncation radius dominates the
// error and is reported rather than hidden.
RoundtripResult inverse_roundtrip(const SampledFunction& f, double x,
                                  const QuadratureSpec& spec, double radius = 4.0,
                                  unsigned grid_steps = 64);

enum class PowerVariant { HalfSum, FullSum };  // 2^{-(r1+r2+r3)/2} vs 2^{-(r1+r2+r3)}

struct PathBResult {
  double lhs_sum = 0.0;         // truncated triple Hermite sum at (x, u)
  double reconstruction = 0.0;  // creation-chain route through the Cayley matrix
};

// Cross-check of the proof route for the generalized Carlitz-Mehler formula:
// the triple sum against det(I+2M)^{-1/2} (A^*)-chain applied to the Cayley
// Gaussian, with the chain computed exactly at the rationalized point.
PathBResult gcmf_path_b(const std::vector<double>& x, const std::vector<double>& u,
                        const ShiftVector& r, unsigned n_lhs, PowerVariant pv);

}  // namespace mehlerkit
