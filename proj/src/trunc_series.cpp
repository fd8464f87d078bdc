#include "trunc_series.hpp"

#include <cmath>

namespace mehlerkit {

TruncSeries TruncSeries::operator-() const {
  TruncSeries r(uvars_, xvars_, order_);
  for (const auto& [e, p] : coeffs_) r.coeffs_.emplace(e, -p);
  return r;
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& o) {
  check_same(o);
  for (const auto& [e, p] : o.coeffs_) add_coeff(e, p);
  return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& o) {
  check_same(o);
  for (const auto& [e, p] : o.coeffs_) add_coeff(e, -p);
  return *this;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  a.check_same(b);
  TruncSeries r(a.uvars_, a.xvars_, a.order_);
  for (const auto& [ea, pa] : a.coeffs_) {
    const unsigned da = exps_degree(ea);
    for (const auto& [eb, pb] : b.coeffs_) {
      if (da + exps_degree(eb) > a.order_) continue;
      Exps e(ea);
      for (unsigned i = 0; i < e.size(); ++i) e[i] += eb[i];
      r.add_coeff(e, pa * pb);
    }
  }
  return r;
}

TruncSeries TruncSeries::scaled(const ScalarQ2& s) const {
  TruncSeries r(uvars_, xvars_, order_);
  if (s.is_zero()) return r;
  for (const auto& [e, p] : coeffs_) r.coeffs_.emplace(e, p.scaled(s));
  return r;
}

TruncSeries TruncSeries::scaled_poly(const MultiPoly& q) const {
  TruncSeries r(uvars_, xvars_, order_);
  if (q.is_zero()) return r;
  for (const auto& [e, p] : coeffs_) {
    MultiPoly prod = p * q;
    if (!prod.is_zero()) r.coeffs_.emplace(e, std::move(prod));
  }
  return r;
}

TruncSeries TruncSeries::derive_u(unsigned j) const {
  if (j >= uvars_) throw DimensionError("TruncSeries: u-derivative axis out of range");
  TruncSeries r(uvars_, xvars_, order_);
  for (const auto& [e, p] : coeffs_) {
    if (e[j] == 0) continue;
    Exps d(e);
    d[j] -= 1;
    r.add_coeff(d, p.scaled(ScalarQ2(static_cast<long>(e[j]))));
  }
  return r;
}

TruncSeries TruncSeries::derive_x(unsigned i) const {
  TruncSeries r(uvars_, xvars_, order_);
  for (const auto& [e, p] : coeffs_) {
    MultiPoly d = p.derive(i);
    if (!d.is_zero()) r.coeffs_.emplace(e, std::move(d));
  }
  return r;
}

TruncSeries TruncSeries::truncated(unsigned new_order) const {
  TruncSeries r(uvars_, xvars_, new_order);
  for (const auto& [e, p] : coeffs_)
    if (exps_degree(e) <= new_order) r.coeffs_.emplace(e, p);
  return r;
}

TruncSeries TruncSeries::pow(const Rational& alpha) const {
  const MultiPoly one = MultiPoly::constant(xvars_, ScalarQ2(1));
  if (constant_coeff() != one)
    throw NonUnitError("TruncSeries::pow: constant term must be 1");
  TruncSeries v = *this;
  v.add_coeff(Exps(uvars_, 0), -one);
  TruncSeries result = TruncSeries::constant(uvars_, xvars_, order_, ScalarQ2(1));
  TruncSeries vk = result;
  for (unsigned k = 1; k <= order_; ++k) {
    vk = vk * v;
    if (vk.is_zero()) break;
    Rational c = rational_binomial(alpha, k);
    if (c != 0) result += vk.scaled(ScalarQ2(c));
  }
  return result;
}

TruncSeries TruncSeries::exp() const {
  if (!constant_coeff().is_zero())
    throw NonNilpotentError("TruncSeries::exp: constant term must be 0");
  TruncSeries result = TruncSeries::constant(uvars_, xvars_, order_, ScalarQ2(1));
  TruncSeries sk = result;
  Rational inv_fact(1);
  for (unsigned k = 1; k <= order_; ++k) {
    sk = sk * *this;
    if (sk.is_zero()) break;
    inv_fact /= k;
    result += sk.scaled(ScalarQ2(inv_fact));
  }
  return result;
}

TruncSeries TruncSeries::subst_u_zero(const std::vector<unsigned>& axes) const {
  TruncSeries r(uvars_, xvars_, order_);
  for (const auto& [e, p] : coeffs_) {
    bool keep = true;
    for (unsigned j : axes)
      if (e[j] != 0) {
        keep = false;
        break;
      }
    if (keep) r.coeffs_.emplace(e, p);
  }
  return r;
}

TruncSeries TruncSeries::permuted(const std::vector<unsigned>& uperm,
                                  const std::vector<unsigned>& xperm) const {
  if (uperm.size() != uvars_ || xperm.size() != xvars_)
    throw DimensionError("TruncSeries: permutation arity mismatch");
  TruncSeries r(uvars_, xvars_, order_);
  for (const auto& [e, p] : coeffs_) {
    Exps eu(uvars_, 0);
    for (unsigned i = 0; i < uvars_; ++i) eu[uperm[i]] = e[i];
    MultiPoly q(xvars_);
    for (const auto& [ex, c] : p.terms()) {
      Exps nx(xvars_, 0);
      for (unsigned i = 0; i < xvars_; ++i) nx[xperm[i]] = ex[i];
      q.add_term(std::move(nx), c);
    }
    r.add_coeff(eu, q);
  }
  return r;
}

double TruncSeries::eval_double(const std::vector<double>& upoint,
                                const std::vector<double>& xpoint) const {
  if (upoint.size() != uvars_) throw DimensionError("TruncSeries: eval arity mismatch");
  double total = 0.0;
  for (const auto& [e, p] : coeffs_) {
    double m = 1.0;
    for (unsigned i = 0; i < uvars_; ++i) m *= std::pow(upoint[i], e[i]);
    total += m * ::mehlerkit::eval_double(p, xpoint);
  }
  return total;
}

std::string TruncSeries::str() const {
  if (coeffs_.empty()) return "0";
  const std::string uprefix = uvars_ == 1 ? "t" : "u";
  std::string out;
  for (const auto& [e, p] : coeffs_) {
    std::string mono;
    for (unsigned i = 0; i < uvars_; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += uvars_ == 1 ? uprefix : uprefix + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string cs = p.is_constant() && !coef_needs_parens(p.constant_term())
                         ? p.str()
                         : "(" + p.str() + ")";
    std::string term = mono.empty() ? cs : (cs == "1" ? mono : cs + "*" + mono);
    if (!out.empty()) out += " + ";
    out += term;
  }
  return out;
}

TruncSeries poly_compose_series(const MultiPoly& p, const TruncSeries& s) {
  if (p.nvars() != 1)
    throw ArityError("poly_compose_series: polynomial must be univariate");
  const unsigned deg = p.total_degree();
  std::vector<ScalarQ2> coef(deg + 1, ScalarQ2(0));
  for (const auto& [e, c] : p.terms()) coef[e[0]] = c;
  TruncSeries r = TruncSeries::constant(s.uvars(), s.xvars(), s.order(), coef[deg]);
  for (unsigned k = deg; k-- > 0;) {
    r = r * s;
    if (!coef[k].is_zero())
      r += TruncSeries::constant(s.uvars(), s.xvars(), s.order(), coef[k]);
  }
  return r;
}

}  // namespace mehlerkit
