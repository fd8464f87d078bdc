#include "hermite.hpp"

#include <stdexcept>

namespace mehlerkit {

HermiteTable::HermiteTable(unsigned max_n) {
  cache_.reserve(max_n + 1);
  cache_.push_back(MultiPoly::constant(1, ScalarQ2(1)));
  if (max_n == 0) return;
  const MultiPoly two_x = MultiPoly::variable(1, 0).scaled(ScalarQ2(2));
  cache_.push_back(two_x);
  for (unsigned n = 1; n < max_n; ++n)
    cache_.push_back(two_x * cache_[n] -
                     cache_[n - 1].scaled(ScalarQ2(2 * static_cast<long>(n))));
}

const MultiPoly& HermiteTable::operator[](unsigned n) const {
  if (n >= cache_.size()) throw std::out_of_range("HermiteTable: index beyond table");
  return cache_[n];
}

MultiPoly hermite_poly(unsigned n) { return HermiteTable(n)[n]; }

MultiPoly hermite_rodrigues(unsigned n) {
  QuadForm c(1);
  c.set(0, 0, ScalarQ2(1));
  GaussianPoly g = gp_derive_n(GaussianPoly::pure(c), 0, n);
  return n % 2 == 0 ? g.P : -g.P;
}

GaussianPoly operational_apply(unsigned m, const GaussianPoly& f, unsigned axis) {
  const unsigned d = f.dim();
  if (axis >= d) throw DimensionError("operational_apply: axis out of range");
  HermiteTable hermite(m);
  const MultiPoly x = MultiPoly::variable(d, axis);
  MultiPoly acc(d);
  GaussianPoly df = f;
  const Rational m_fact(factorial(m));
  for (unsigned j = 0; j <= m; ++j) {
    if (j > 0) df = gp_derive(df, axis);
    Rational c = m_fact / (Rational(factorial(j)) * Rational(factorial(m - j)));
    if (j % 2 == 1) c = -c;
    acc += (compose_univariate(hermite[m - j], x) * df.P).scaled(ScalarQ2(c));
  }
  return GaussianPoly(std::move(acc), f.C);
}

bool addition_formula_check(unsigned n, const std::vector<Rational>& a) {
  const unsigned r = static_cast<unsigned>(a.size());
  if (r == 0) throw ArityError("addition_formula_check: empty coefficient tuple");
  HermiteTable hermite(n);

  Rational sum_sq(0);
  for (const Rational& ak : a) sum_sq += ak * ak;
  MultiPoly w(r);  // sum a_k x_k
  for (unsigned k = 0; k < r; ++k) {
    if (a[k] == 0) continue;
    Exps e(r, 0);
    e[k] = 1;
    w.add_term(std::move(e), ScalarQ2(a[k]));
  }

  MultiPoly lhs(r);
  if (auto rho = sqrt_q2(ScalarQ2(sum_sq))) {
    // Direct route with the explicit radical in Q(sqrt2).
    MultiPoly h = compose_univariate(hermite[n], w.scaled(rho->inverse()));
    lhs = h.scaled(rho->pow(static_cast<long>(n)) *
                   ScalarQ2(Rational(1) / Rational(factorial(n))));
  } else if (n % 2 == 0) {
    // Even n: the radicals cancel pairwise, so only sum_sq itself is needed:
    // (sum a^2)^{n/2} H_n(W/rho) = sum_k c_k W^k (sum a^2)^{(n-k)/2}.
    for (const auto& [e, c] : hermite[n].terms()) {
      const unsigned k = e[0];
      MultiPoly wk = MultiPoly::constant(r, ScalarQ2(1));
      for (unsigned i = 0; i < k; ++i) wk *= w;
      lhs += wk.scaled(c * ScalarQ2(rational_pow(sum_sq, (n - k) / 2)));
    }
    lhs = lhs.scaled(ScalarQ2(Rational(1) / Rational(factorial(n))));
  } else {
    throw RadicalError(
        "addition_formula_check: sqrt(sum a_k^2) not representable for odd n");
  }

  MultiPoly rhs(r);
  ShiftVector m(r, 0);
  auto rec = [&](auto&& self, unsigned pos, unsigned remaining) -> void {
    if (pos == r - 1) {
      m[pos] = remaining;
      MultiPoly term = MultiPoly::constant(r, ScalarQ2(1));
      ScalarQ2 coef(1);
      for (unsigned k = 0; k < r; ++k) {
        coef *= ScalarQ2(rational_pow(a[k], m[k]) / Rational(factorial(m[k])));
        if (coef.is_zero()) break;
        term *= compose_univariate(hermite[m[k]], MultiPoly::variable(r, k));
      }
      if (!coef.is_zero()) rhs += term.scaled(coef);
      return;
    }
    for (unsigned v = 0; v <= remaining; ++v) {
      m[pos] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  rec(rec, 0, n);

  return lhs == rhs;
}

}  // namespace mehlerkit
