#pragma once

#include <vector>

#include "gaussian_ops.hpp"
#include "multipoly.hpp"

namespace mehlerkit {

// Physicists' Hermite polynomials H_0..H_max built once by the three-term
// recurrence H_{n+1} = 2x H_n - 2n H_{n-1}; read-only afterwards.
class HermiteTable {
 public:
  explicit HermiteTable(unsigned max_n);

  unsigned max_n() const { return static_cast<unsigned>(cache_.size()) - 1; }
  const MultiPoly& operator[](unsigned n) const;

 private:
  std::vector<MultiPoly> cache_;
};

// H_n as a univariate polynomial (integer coefficients, leading term (2x)^n).
MultiPoly hermite_poly(unsigned n);

// Independent oracle: (-1)^n e^{x^2} D^n e^{-x^2} via symbolic Gaussian
// differentiation.
MultiPoly hermite_rodrigues(unsigned n);

// Right side of the operational formula
//   (-D + 2x)^m f = m! sum_j (-1)^j/j! * H_{m-j}(x)/(m-j)! * D^j f
// along the given axis; must agree with m-fold gp_creation.
GaussianPoly operational_apply(unsigned m, const GaussianPoly& f, unsigned axis);

// Exact polynomial check of the addition formula
//   (sum a_k^2)^{n/2}/n! H_n(sum a_k x_k / sqrt(sum a_k^2))
//     = sum_{m_1+...+m_r = n} prod a_k^{m_k}/m_k! H_{m_k}(x_k).
// sqrt(sum a_k^2) must lie in Q(sqrt2) when n is odd.
bool addition_formula_check(unsigned n, const std::vector<Rational>& a);

}  // namespace mehlerkit
