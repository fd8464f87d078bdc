#pragma once

#include <map>
#include <string>
#include <vector>

#include "multipoly.hpp"

namespace mehlerkit {

// Formal power series in u_1..u_m, truncated at total u-degree N.  The
// coefficient of each u-monomial is an exact polynomial in x_1..x_d; the
// x-variables are never truncated.
class TruncSeries {
 public:
  using CoeffMap = std::map<Exps, MultiPoly, GradedLexLess>;

  TruncSeries(unsigned uvars, unsigned xvars, unsigned order)
      : uvars_(uvars), xvars_(xvars), order_(order) {}

  static TruncSeries constant(unsigned uvars, unsigned xvars, unsigned order,
                              const ScalarQ2& c) {
    return from_poly(uvars, order, MultiPoly::constant(xvars, c));
  }
  static TruncSeries from_poly(unsigned uvars, unsigned order, MultiPoly p) {
    TruncSeries s(uvars, p.nvars(), order);
    s.set_coeff(Exps(uvars, 0), std::move(p));
    return s;
  }
  static TruncSeries uvariable(unsigned uvars, unsigned xvars, unsigned order,
                               unsigned j) {
    if (j >= uvars) throw DimensionError("TruncSeries: u-variable out of range");
    TruncSeries s(uvars, xvars, order);
    Exps e(uvars, 0);
    e[j] = 1;
    s.set_coeff(std::move(e), MultiPoly::constant(xvars, ScalarQ2(1)));
    return s;
  }

  unsigned uvars() const { return uvars_; }
  unsigned xvars() const { return xvars_; }
  unsigned order() const { return order_; }
  const CoeffMap& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  std::size_t term_count() const {
    std::size_t n = 0;
    for (const auto& [e, p] : coeffs_) n += p.terms().size();
    return n;
  }

  MultiPoly coeff(const Exps& e) const {
    auto it = coeffs_.find(e);
    return it == coeffs_.end() ? MultiPoly(xvars_) : it->second;
  }
  MultiPoly constant_coeff() const { return coeff(Exps(uvars_, 0)); }

  void set_coeff(Exps e, MultiPoly p) {
    if (e.size() != uvars_) throw DimensionError("TruncSeries: u-exponent arity mismatch");
    if (exps_degree(e) > order_ || p.is_zero())
      coeffs_.erase(e);
    else
      coeffs_.insert_or_assign(std::move(e), std::move(p));
  }
  void add_coeff(const Exps& e, const MultiPoly& p) {
    if (e.size() != uvars_) throw DimensionError("TruncSeries: u-exponent arity mismatch");
    if (exps_degree(e) > order_ || p.is_zero()) return;
    auto it = coeffs_.find(e);
    if (it == coeffs_.end()) {
      coeffs_.emplace(e, p);
    } else {
      it->second += p;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }

  TruncSeries operator-() const;
  TruncSeries& operator+=(const TruncSeries& o);
  TruncSeries& operator-=(const TruncSeries& o);
  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
  TruncSeries& operator*=(const TruncSeries& o) { return *this = *this * o; }

  TruncSeries scaled(const ScalarQ2& s) const;
  TruncSeries scaled_poly(const MultiPoly& p) const;

  TruncSeries derive_u(unsigned j) const;
  TruncSeries derive_x(unsigned i) const;

  TruncSeries truncated(unsigned new_order) const;

  // Binomial series (1+v)^alpha with v = *this - 1; requires constant term 1.
  TruncSeries pow(const Rational& alpha) const;
  // sum_k s^k/k!; requires zero constant term (x-dependence allowed above u^0).
  TruncSeries exp() const;

  // Drops every term with a positive exponent on any of the given u-axes.
  TruncSeries subst_u_zero(const std::vector<unsigned>& axes) const;
  // Renames u_i -> u_{uperm[i]} and x_i -> x_{xperm[i]}.
  TruncSeries permuted(const std::vector<unsigned>& uperm,
                       const std::vector<unsigned>& xperm) const;

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    return a.uvars_ == b.uvars_ && a.xvars_ == b.xvars_ &&
           a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const TruncSeries& a, const TruncSeries& b) {
    return !(a == b);
  }

  double eval_double(const std::vector<double>& upoint,
                     const std::vector<double>& xpoint) const;

  // Single u-variable prints as t, several as u1..um.
  std::string str() const;

 private:
  void check_same(const TruncSeries& o) const {
    if (uvars_ != o.uvars_ || xvars_ != o.xvars_)
      throw DimensionError("TruncSeries: variable count mismatch");
    if (order_ != o.order_)
      throw DimensionError("TruncSeries: truncation order mismatch");
  }

  unsigned uvars_, xvars_, order_;
  CoeffMap coeffs_;
};

// Univariate polynomial evaluated at a series argument (Horner).
TruncSeries poly_compose_series(const MultiPoly& p, const TruncSeries& s);

}  // namespace mehlerkit
