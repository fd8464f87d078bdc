#pragma once

#include <string>
#include <vector>

#include "multipoly.hpp"

namespace mehlerkit {

using ShiftVector = std::vector<unsigned>;
using LambdaIndex = std::vector<unsigned>;

// Symmetric d x d matrix C over Q(sqrt2), used as the exponent of
// exp(-x^T C x).  The associated coefficients are read off as
// a_ii = C_ii and a_ij = -C_ij for i != j, the convention under which
// exp(-x^T C x) = exp(-a_11 x_1^2 + 2(a_12 x_2 + ...) x_1) * (rest).
class QuadForm {
 public:
  explicit QuadForm(unsigned dim)
      : dim_(dim), m_(static_cast<std::size_t>(dim) * dim, ScalarQ2(0)) {}

  unsigned dim() const { return dim_; }
  const ScalarQ2& at(unsigned i, unsigned j) const { return m_[i * dim_ + j]; }
  void set(unsigned i, unsigned j, ScalarQ2 v) {
    m_[i * dim_ + j] = v;
    m_[j * dim_ + i] = std::move(v);
  }

  ScalarQ2 diag_a(unsigned i) const { return at(i, i); }
  ScalarQ2 offdiag_a(unsigned i, unsigned j) const { return -at(i, j); }

  // x^T C x as a polynomial in x_1..x_d.
  MultiPoly quadratic_poly() const;

  ScalarQ2 eval(const std::vector<ScalarQ2>& x) const;

  friend bool operator==(const QuadForm& a, const QuadForm& b) {
    return a.dim_ == b.dim_ && a.m_ == b.m_;
  }

 private:
  unsigned dim_;
  std::vector<ScalarQ2> m_;
};

// P(x) * exp(-x^T C x).  The class is closed under partial derivatives and
// under the creation operators A_j^* = -d/dx_j + 2 x_j.
struct GaussianPoly {
  MultiPoly P;
  QuadForm C;

  GaussianPoly(MultiPoly p, QuadForm c) : P(std::move(p)), C(std::move(c)) {
    if (P.nvars() != C.dim())
      throw DimensionError("GaussianPoly: polynomial/matrix dimension mismatch");
  }
  static GaussianPoly pure(QuadForm c) {
    MultiPoly one = MultiPoly::constant(c.dim(), ScalarQ2(1));
    return GaussianPoly(std::move(one), std::move(c));
  }

  unsigned dim() const { return C.dim(); }
  double eval(const std::vector<double>& x) const;

  friend bool operator==(const GaussianPoly& a, const GaussianPoly& b) {
    return a.C == b.C && a.P == b.P;
  }
  friend bool operator!=(const GaussianPoly& a, const GaussianPoly& b) {
    return !(a == b);
  }
};

// d/dx_i of P e^{-x^T C x}; the quadratic form is untouched.
GaussianPoly gp_derive(const GaussianPoly& g, unsigned axis);
GaussianPoly gp_derive_n(const GaussianPoly& g, unsigned axis, unsigned n);

// Creation operator along axis j: -gp_derive(g, j) + 2 x_j g.
GaussianPoly gp_creation(const GaussianPoly& g, unsigned axis);
GaussianPoly gp_creation_n(const GaussianPoly& g, unsigned axis, unsigned n);

// Closed form for D_i^m exp(-x^T C x):
//   (-1)^m a_ii^{m/2} H_m(sqrt(a_ii) x_i - sum_{j != i} a_ij/sqrt(a_ii) x_j) e^{-x^T C x}.
// Requires a_ii > 0 with sqrt(a_ii) in Q(sqrt2).
GaussianPoly lemma_dg_closed(unsigned m, const QuadForm& C, unsigned axis);

// All k in N^{d-1} with sum k_i <= min(r), in ascending lexicographic order.
std::vector<LambdaIndex> lambda_enum(const ShiftVector& r);

// Readings of the creation-operator closed form that differ in the printed
// typography: which diagonal entry carries the (1+a)^{-k_i/2} factor, and
// whether the k-sum runs over the printed simplex or the full box k_i <= r_{i+1}.
enum class DiagIndex { AsPrinted, Shifted };
enum class KSumRange { Simplex, FullBox };

struct TheoremVariant {
  DiagIndex diag = DiagIndex::Shifted;
  KSumRange ksum = KSumRange::FullBox;
  std::string name() const;
  static const std::vector<TheoremVariant>& all();
};

// (A_d^*)^{r_d} ... (A_1^*)^{r_1} e^{-x^T C x}, axis 1 applied first.
// Creation operators along distinct axes commute, so the order is immaterial;
// it is asserted by tests rather than assumed.
GaussianPoly creation_chain_lhs(const QuadForm& C, const ShiftVector& r);

// Closed-form right side of the creation-operator identity under a chosen
// reading; requires every 1 + a_ii to be positive with square root in Q(sqrt2).
GaussianPoly theorem_rhs(const QuadForm& C, const ShiftVector& r,
                         const TheoremVariant& variant);

// Fully explicit closed forms for d = 1 and d = 2 (single Hermite factor,
// respectively the double sum with the (2 a_12)^{k_1} coupling).
GaussianPoly special_closed(const QuadForm& C, const ShiftVector& r);

}  // namespace mehlerkit
