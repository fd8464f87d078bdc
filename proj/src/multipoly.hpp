#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "scalar_q2.hpp"

namespace mehlerkit {

using Exps = std::vector<std::uint32_t>;

inline unsigned exps_degree(const Exps& e) {
  return std::accumulate(e.begin(), e.end(), 0u);
}

// Graded-lexicographic term order: total degree first, then lex.
struct GradedLexLess {
  bool operator()(const Exps& a, const Exps& b) const {
    const unsigned da = exps_degree(a), db = exps_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

inline bool coef_is_zero(const ScalarQ2& c) { return c.is_zero(); }
inline bool coef_is_zero(double c) { return c == 0.0; }
inline std::string coef_str(const ScalarQ2& c) { return c.str(); }
inline std::string coef_str(double c) {
  std::ostringstream os;
  os.precision(12);
  os << c;
  return os.str();
}
// Mixed components need parentheses when printed next to a monomial.
inline bool coef_needs_parens(const ScalarQ2& c) {
  return !(c.rat() == 0) && !(c.irr() == 0);
}
inline bool coef_needs_parens(double) { return false; }

// Sparse multivariate polynomial in x_1..x_d with no stored zero coefficients.
// Terms are kept in graded-lex order for deterministic iteration and output.
template <class Coef>
class MultiPolyT {
 public:
  using TermMap = std::map<Exps, Coef, GradedLexLess>;

  explicit MultiPolyT(unsigned nvars = 0) : nvars_(nvars) {}

  static MultiPolyT constant(unsigned nvars, Coef c) {
    MultiPolyT p(nvars);
    p.add_term(Exps(nvars, 0), std::move(c));
    return p;
  }
  static MultiPolyT variable(unsigned nvars, unsigned i) {
    if (i >= nvars) throw DimensionError("MultiPoly: variable index out of range");
    MultiPolyT p(nvars);
    Exps e(nvars, 0);
    e[i] = 1;
    p.add_term(std::move(e), Coef(1));
    return p;
  }

  unsigned nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && exps_degree(terms_.begin()->first) == 0);
  }
  const TermMap& terms() const { return terms_; }

  Coef constant_term() const {
    auto it = terms_.find(Exps(nvars_, 0));
    return it == terms_.end() ? Coef(0) : it->second;
  }

  unsigned total_degree() const {
    return terms_.empty() ? 0 : exps_degree(terms_.rbegin()->first);
  }
  unsigned degree_in(unsigned axis) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<unsigned>(e[axis]));
    return d;
  }

  void add_term(Exps e, Coef c) {
    if (e.size() != nvars_) throw DimensionError("MultiPoly: exponent arity mismatch");
    if (coef_is_zero(c)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(std::move(e), std::move(c));
    } else {
      it->second += c;
      if (coef_is_zero(it->second)) terms_.erase(it);
    }
  }

  MultiPolyT operator-() const {
    MultiPolyT r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }

  MultiPolyT& operator+=(const MultiPolyT& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MultiPolyT& operator-=(const MultiPolyT& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  friend MultiPolyT operator+(MultiPolyT a, const MultiPolyT& b) { return a += b; }
  friend MultiPolyT operator-(MultiPolyT a, const MultiPolyT& b) { return a -= b; }

  friend MultiPolyT operator*(const MultiPolyT& a, const MultiPolyT& b) {
    a.check_same(b);
    MultiPolyT r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Coef c = ca * cb;
        if (coef_is_zero(c)) continue;
        Exps e(ea);
        for (unsigned i = 0; i < e.size(); ++i) e[i] += eb[i];
        r.add_term(std::move(e), std::move(c));
      }
    return r;
  }

  MultiPolyT& operator*=(const MultiPolyT& o) { return *this = *this * o; }

  MultiPolyT scaled(const Coef& s) const {
    MultiPolyT r(nvars_);
    if (coef_is_zero(s)) return r;
    for (const auto& [e, c] : terms_) r.add_term(e, c * s);
    return r;
  }

  MultiPolyT derive(unsigned axis) const {
    if (axis >= nvars_) throw DimensionError("MultiPoly: derivative axis out of range");
    MultiPolyT r(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[axis] == 0) continue;
      Exps d(e);
      d[axis] -= 1;
      r.add_term(std::move(d), c * Coef(static_cast<long>(e[axis])));
    }
    return r;
  }

  Coef eval(const std::vector<Coef>& point) const {
    if (point.size() != nvars_) throw DimensionError("MultiPoly: eval arity mismatch");
    Coef total(0);
    for (const auto& [e, c] : terms_) {
      Coef t = c;
      for (unsigned i = 0; i < nvars_; ++i)
        for (std::uint32_t k = 0; k < e[i]; ++k) t *= point[i];
      total += t;
    }
    return total;
  }

  friend bool operator==(const MultiPolyT& a, const MultiPolyT& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const MultiPolyT& a, const MultiPolyT& b) { return !(a == b); }

  // Canonical display: descending graded-lex, variables named <prefix>1..<prefix>d.
  std::string str(const std::string& prefix = "x") const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      std::string t = term_str(it->first, it->second, prefix);
      if (out.empty())
        out = t;
      else if (t.front() == '-')
        out += " - " + t.substr(1);
      else
        out += " + " + t;
    }
    return out;
  }

 private:
  void check_same(const MultiPolyT& o) const {
    if (nvars_ != o.nvars_) throw DimensionError("MultiPoly: variable count mismatch");
  }

  static std::string mono_str(const Exps& e, const std::string& prefix) {
    std::string m;
    for (unsigned i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!m.empty()) m += "*";
      m += prefix + std::to_string(i + 1);
      if (e[i] > 1) m += "^" + std::to_string(e[i]);
    }
    return m;
  }

  static std::string term_str(const Exps& e, const Coef& c, const std::string& prefix) {
    const std::string m = mono_str(e, prefix);
    if (m.empty()) return coef_str(c);
    if (c == Coef(1)) return m;
    if (c == Coef(-1)) return "-" + m;
    if (coef_needs_parens(c)) return "(" + coef_str(c) + ")*" + m;
    return coef_str(c) + "*" + m;
  }

  unsigned nvars_;
  TermMap terms_;
};

using MultiPoly = MultiPolyT<ScalarQ2>;
using DoublePoly = MultiPolyT<double>;

// Evaluates a univariate polynomial at another polynomial by Horner's scheme.
template <class Coef>
MultiPolyT<Coef> compose_univariate(const MultiPolyT<Coef>& p,
                                    const MultiPolyT<Coef>& arg) {
  if (p.nvars() != 1) throw ArityError("compose_univariate: polynomial must be univariate");
  const unsigned deg = p.total_degree();
  std::vector<Coef> coef(deg + 1, Coef(0));
  for (const auto& [e, c] : p.terms()) coef[e[0]] = c;
  MultiPolyT<Coef> r = MultiPolyT<Coef>::constant(arg.nvars(), coef[deg]);
  for (unsigned k = deg; k-- > 0;) {
    r = r * arg;
    if (!coef_is_zero(coef[k]))
      r += MultiPolyT<Coef>::constant(arg.nvars(), coef[k]);
  }
  return r;
}

inline DoublePoly to_double_poly(const MultiPoly& p) {
  DoublePoly r(p.nvars());
  for (const auto& [e, c] : p.terms()) r.add_term(e, c.to_double());
  return r;
}

inline double eval_double(const MultiPoly& p, const std::vector<double>& point) {
  return to_double_poly(p).eval(point);
}

}  // namespace mehlerkit
