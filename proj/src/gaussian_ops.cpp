#include "gaussian_ops.hpp"

#include <algorithm>
#include <cmath>

#include "hermite.hpp"

namespace mehlerkit {

MultiPoly QuadForm::quadratic_poly() const {
  MultiPoly q(dim_);
  for (unsigned i = 0; i < dim_; ++i)
    for (unsigned j = 0; j < dim_; ++j) {
      if (at(i, j).is_zero()) continue;
      Exps e(dim_, 0);
      e[i] += 1;
      e[j] += 1;
      q.add_term(std::move(e), at(i, j));
    }
  return q;
}

ScalarQ2 QuadForm::eval(const std::vector<ScalarQ2>& x) const {
  if (x.size() != dim_) throw DimensionError("QuadForm: eval arity mismatch");
  ScalarQ2 total(0);
  for (unsigned i = 0; i < dim_; ++i)
    for (unsigned j = 0; j < dim_; ++j) total += at(i, j) * x[i] * x[j];
  return total;
}

double GaussianPoly::eval(const std::vector<double>& x) const {
  double quad = 0.0;
  for (unsigned i = 0; i < dim(); ++i)
    for (unsigned j = 0; j < dim(); ++j)
      quad += C.at(i, j).to_double() * x[i] * x[j];
  return eval_double(P, x) * std::exp(-quad);
}

GaussianPoly gp_derive(const GaussianPoly& g, unsigned axis) {
  const unsigned d = g.dim();
  if (axis >= d) throw DimensionError("gp_derive: axis out of range");
  // d/dx_i (x^T C x) = 2 sum_j C_ij x_j
  MultiPoly grad(d);
  for (unsigned j = 0; j < d; ++j) {
    const ScalarQ2& c = g.C.at(axis, j);
    if (c.is_zero()) continue;
    Exps e(d, 0);
    e[j] = 1;
    grad.add_term(std::move(e), ScalarQ2(2) * c);
  }
  MultiPoly p = g.P.derive(axis) - g.P * grad;
  return GaussianPoly(std::move(p), g.C);
}

GaussianPoly gp_derive_n(const GaussianPoly& g, unsigned axis, unsigned n) {
  GaussianPoly r = g;
  for (unsigned k = 0; k < n; ++k) r = gp_derive(r, axis);
  return r;
}

GaussianPoly gp_creation(const GaussianPoly& g, unsigned axis) {
  const unsigned d = g.dim();
  if (axis >= d) throw DimensionError("gp_creation: axis out of range");
  GaussianPoly der = gp_derive(g, axis);
  MultiPoly p = -der.P + MultiPoly::variable(d, axis) * g.P.scaled(ScalarQ2(2));
  return GaussianPoly(std::move(p), g.C);
}

GaussianPoly gp_creation_n(const GaussianPoly& g, unsigned axis, unsigned n) {
  GaussianPoly r = g;
  for (unsigned k = 0; k < n; ++k) r = gp_creation(r, axis);
  return r;
}

GaussianPoly lemma_dg_closed(unsigned m, const QuadForm& C, unsigned axis) {
  const unsigned d = C.dim();
  if (axis >= d) throw DimensionError("lemma_dg_closed: axis out of range");
  const ScalarQ2 aii = C.diag_a(axis);
  if (aii.sign() <= 0)
    throw RadicalError("lemma_dg_closed: diagonal entry must be positive");
  auto root = sqrt_q2(aii);
  if (!root)
    throw RadicalError("lemma_dg_closed: sqrt(a_ii) not representable in Q(sqrt2)");
  const ScalarQ2 inv_root = root->inverse();
  MultiPoly arg(d);
  {
    Exps e(d, 0);
    e[axis] = 1;
    arg.add_term(std::move(e), *root);
  }
  for (unsigned j = 0; j < d; ++j) {
    if (j == axis) continue;
    const ScalarQ2 aij = C.offdiag_a(axis, j);
    if (aij.is_zero()) continue;
    Exps e(d, 0);
    e[j] = 1;
    arg.add_term(std::move(e), -(aij * inv_root));
  }
  MultiPoly hm = compose_univariate(hermite_poly(m), arg);
  ScalarQ2 scale = root->pow(static_cast<long>(m));
  if (m % 2 == 1) scale = -scale;
  return GaussianPoly(hm.scaled(scale), C);
}

std::vector<LambdaIndex> lambda_enum(const ShiftVector& r) {
  const unsigned d = static_cast<unsigned>(r.size());
  if (d < 2) throw ArityError("lambda_enum: requires d >= 2");
  const unsigned bound = *std::min_element(r.begin(), r.end());
  std::vector<LambdaIndex> out;
  LambdaIndex k(d - 1, 0);
  auto rec = [&](auto&& self, unsigned pos, unsigned remaining) -> void {
    if (pos == d - 1) {
      out.push_back(k);
      return;
    }
    for (unsigned v = 0; v <= remaining; ++v) {
      k[pos] = v;
      self(self, pos + 1, remaining - v);
    }
    k[pos] = 0;
  };
  rec(rec, 0, bound);
  return out;
}

std::string TheoremVariant::name() const {
  std::string s = diag == DiagIndex::AsPrinted ? "diag=printed" : "diag=shift";
  s += ksum == KSumRange::Simplex ? ",ksum=min" : ",ksum=box";
  return s;
}

const std::vector<TheoremVariant>& TheoremVariant::all() {
  static const std::vector<TheoremVariant> v = {
      {DiagIndex::AsPrinted, KSumRange::Simplex},
      {DiagIndex::AsPrinted, KSumRange::FullBox},
      {DiagIndex::Shifted, KSumRange::Simplex},
      {DiagIndex::Shifted, KSumRange::FullBox},
  };
  return v;
}

GaussianPoly creation_chain_lhs(const QuadForm& C, const ShiftVector& r) {
  if (r.size() != C.dim())
    throw DimensionError("creation_chain_lhs: shift/matrix dimension mismatch");
  GaussianPoly g = GaussianPoly::pure(C);
  for (unsigned axis = 0; axis < r.size(); ++axis)
    g = gp_creation_n(g, axis, r[axis]);
  return g;
}

namespace {

// k-index sets for the closed form: printed simplex or full box k_i <= r_{i+1}.
std::vector<LambdaIndex> ksum_indices(const ShiftVector& r, KSumRange range) {
  const unsigned d = static_cast<unsigned>(r.size());
  if (d == 1) return {LambdaIndex{}};
  if (range == KSumRange::Simplex) return lambda_enum(r);
  std::vector<LambdaIndex> out;
  LambdaIndex k(d - 1, 0);
  while (true) {
    out.push_back(k);
    unsigned pos = d - 1;
    bool advanced = false;
    while (pos-- > 0) {
      if (k[pos] < r[pos + 1]) {
        k[pos] += 1;
        std::fill(k.begin() + pos + 1, k.end(), 0u);
        advanced = true;
        break;
      }
      k[pos] = 0;
    }
    if (!advanced) return out;
  }
}

}  // namespace

GaussianPoly theorem_rhs(const QuadForm& C, const ShiftVector& r,
                         const TheoremVariant& variant) {
  const unsigned d = C.dim();
  if (r.size() != d)
    throw DimensionError("theorem_rhs: shift/matrix dimension mismatch");
  const unsigned rmax = r.empty() ? 0 : *std::max_element(r.begin(), r.end());
  HermiteTable hermite(rmax);

  // sqrt(1 + a_ii) and the normalized linear forms S_i.
  std::vector<ScalarQ2> root(d);
  std::vector<MultiPoly> S;
  S.reserve(d);
  for (unsigned i = 0; i < d; ++i) {
    ScalarQ2 one_plus = ScalarQ2(1) + C.diag_a(i);
    if (one_plus.sign() <= 0)
      throw RadicalError("theorem_rhs: 1 + a_ii must be positive");
    auto rt = sqrt_q2(one_plus);
    if (!rt)
      throw RadicalError("theorem_rhs: sqrt(1 + a_ii) not representable in Q(sqrt2)");
    root[i] = *rt;
    MultiPoly num(d);
    {
      Exps e(d, 0);
      e[i] = 1;
      num.add_term(std::move(e), one_plus);
    }
    for (unsigned j = 0; j < d; ++j) {
      if (j == i) continue;
      const ScalarQ2 aij = C.offdiag_a(i, j);
      if (aij.is_zero()) continue;
      Exps e(d, 0);
      e[j] = 1;
      num.add_term(std::move(e), -aij);
    }
    S.push_back(num.scaled(rt->inverse()));
  }

  auto hermite_of_S = [&](unsigned n, unsigned i) {
    return compose_univariate(hermite[n], S[i]);
  };

  MultiPoly sum(d);
  for (const LambdaIndex& k : ksum_indices(r, variant.ksum)) {
    // P_k built inside out: Q_1 = H_{r_1}(S_1), then
    // Q_i = H_{r_i - k_{i-1}}(S_i) * D_i^{k_{i-1}} Q_{i-1}.
    MultiPoly q = hermite_of_S(r[0], 0);
    ScalarQ2 factor(1);
    bool vanished = false;
    for (unsigned i = 1; i < d; ++i) {
      const unsigned ki = k[i - 1];
      for (unsigned l = 0; l < ki && !vanished; ++l) {
        q = q.derive(i);
        vanished = q.is_zero();
      }
      if (vanished) break;
      q = hermite_of_S(r[i] - ki, i) * q;
      const unsigned diag_idx = variant.diag == DiagIndex::AsPrinted ? i - 1 : i;
      factor *= root[diag_idx].inverse().pow(static_cast<long>(ki));
      factor *= ScalarQ2(Rational(integer_binomial(r[i], ki)));
      if (ki % 2 == 1) factor = -factor;
    }
    if (vanished) continue;
    sum += q.scaled(factor);
  }

  ScalarQ2 prefactor(1);
  for (unsigned i = 0; i < d; ++i)
    prefactor *= root[i].pow(static_cast<long>(r[i]));
  return GaussianPoly(sum.scaled(prefactor), C);
}

GaussianPoly special_closed(const QuadForm& C, const ShiftVector& r) {
  const unsigned d = C.dim();
  if (d != r.size())
    throw DimensionError("special_closed: shift/matrix dimension mismatch");
  if (d != 1 && d != 2)
    throw DimensionError("special_closed: only d = 1 and d = 2");
  const unsigned rmax = *std::max_element(r.begin(), r.end());
  HermiteTable hermite(rmax);

  std::vector<ScalarQ2> root(d);
  std::vector<MultiPoly> S;
  for (unsigned i = 0; i < d; ++i) {
    ScalarQ2 one_plus = ScalarQ2(1) + C.diag_a(i);
    auto rt = sqrt_q2(one_plus);
    if (one_plus.sign() <= 0 || !rt)
      throw RadicalError("special_closed: sqrt(1 + a_ii) not representable");
    root[i] = *rt;
    MultiPoly num(d);
    {
      Exps e(d, 0);
      e[i] = 1;
      num.add_term(std::move(e), one_plus);
    }
    for (unsigned j = 0; j < d; ++j) {
      if (j == i) continue;
      Exps e(d, 0);
      e[j] = 1;
      num.add_term(std::move(e), -C.offdiag_a(i, j));
    }
    S.push_back(num.scaled(rt->inverse()));
  }

  if (d == 1) {
    MultiPoly p = compose_univariate(hermite[r[0]], S[0]);
    return GaussianPoly(p.scaled(root[0].pow(static_cast<long>(r[0]))), C);
  }

  const ScalarQ2 a12 = C.offdiag_a(0, 1);
  const ScalarQ2 inv_roots = (root[0] * root[1]).inverse();
  MultiPoly sum(d);
  const unsigned kmax = std::min(r[0], r[1]);
  for (unsigned k = 0; k <= kmax; ++k) {
    ScalarQ2 factor = ScalarQ2(Rational(integer_binomial(r[0], k))) *
                      ScalarQ2(Rational(integer_binomial(r[1], k))) *
                      ScalarQ2(Rational(factorial(k))) *
                      (ScalarQ2(2) * a12).pow(k) * inv_roots.pow(k);
    if (factor.is_zero()) continue;
    MultiPoly term = compose_univariate(hermite[r[1] - k], S[1]) *
                     compose_univariate(hermite[r[0] - k], S[0]);
    sum += term.scaled(factor);
  }
  ScalarQ2 prefactor = root[0].pow(static_cast<long>(r[0])) *
                       root[1].pow(static_cast<long>(r[1]));
  return GaussianPoly(sum.scaled(prefactor), C);
}

}  // namespace mehlerkit
