#include "identities.hpp"

#include <algorithm>
#include <array>

#include "hermite.hpp"

namespace mehlerkit {

std::string family_name(Family f) {
  switch (f) {
    case Family::Mehler: return "mehler";
    case Family::CarlitzBilinear: return "carlitz-bilinear";
    case Family::CarlitzTrilinear: return "carlitz-trilinear";
    case Family::Srivastava: return "srivastava";
    case Family::Gcmf: return "gcmf";
  }
  return "?";
}

std::optional<Family> family_from_name(const std::string& name) {
  for (Family f : {Family::Mehler, Family::CarlitzBilinear,
                   Family::CarlitzTrilinear, Family::Srivastava, Family::Gcmf})
    if (family_name(f) == name) return f;
  return std::nullopt;
}

static unsigned shift_arity(Family f) {
  switch (f) {
    case Family::CarlitzBilinear:
    case Family::Srivastava: return 2;
    case Family::Gcmf: return 3;
    default: return 0;
  }
}

void validate_instance(const IdentityInstance& inst) {
  if (inst.shifts.size() != shift_arity(inst.family))
    throw ConfigError("family " + family_name(inst.family) + " takes " +
                      std::to_string(shift_arity(inst.family)) + " shifts, got " +
                      std::to_string(inst.shifts.size()));
}

const std::vector<IdentityVariant>& variants_for(Family f) {
  static const std::vector<IdentityVariant> mehler = [] {
    IdentityVariant v;
    v.name = "classical";
    return std::vector<IdentityVariant>{v};
  }();
  static const std::vector<IdentityVariant> bilinear = [] {
    std::vector<IdentityVariant> out;
    for (bool den4 : {false, true}) {
      IdentityVariant v;
      v.name = den4 ? "den=1-4t^2" : "den=1-t^2";
      v.bilinear_den_4 = den4;
      out.push_back(v);
    }
    return out;
  }();
  static const std::vector<IdentityVariant> trilinear = [] {
    IdentityVariant v;
    v.name = "as-printed";
    return std::vector<IdentityVariant>{v};
  }();
  static const std::vector<IdentityVariant> srivastava = [] {
    std::vector<IdentityVariant> out;
    for (bool cpl : {false, true})
      for (bool bind : {true, false})
        for (bool pooled : {false, true}) {
          IdentityVariant v;
          v.sriv_coupling_u1u2 = cpl;
          v.sriv_bind_r1r2 = bind;
          v.sriv_root_pooled = pooled;
          v.name = std::string("cpl=") + (cpl ? "u3-2u1u2" : "u3-2u1u1") +
                   ",bind=" + (bind ? "(r1,r2)" : "(r2,r1)") +
                   ",root=" + (pooled ? "pooled" : "split");
          out.push_back(v);
        }
    return out;
  }();
  static const std::vector<IdentityVariant> gcmf = [] {
    using KF = IdentityVariant::GcmfKFactor;
    std::vector<IdentityVariant> out;
    for (bool pooled : {false, true})
      for (KF kf : {KF::Printed, KF::PrintedShift, KF::Scaled, KF::ScaledShift})
        for (bool box : {false, true}) {
          IdentityVariant v;
          v.gcmf_delta_pooled = pooled;
          v.gcmf_kfac = kf;
          v.gcmf_ksum_box = box;
          std::string kfs;
          switch (kf) {
            case KF::Printed: kfs = "printed"; break;
            case KF::PrintedShift: kfs = "printed-shift"; break;
            case KF::Scaled: kfs = "scaled"; break;
            case KF::ScaledShift: kfs = "scaled-shift"; break;
          }
          v.name = std::string("delta=") + (pooled ? "pooled" : "printed") +
                   ",kfac=" + kfs + ",ksum=" + (box ? "box" : "min");
          out.push_back(v);
        }
    return out;
  }();
  switch (f) {
    case Family::Mehler: return mehler;
    case Family::CarlitzBilinear: return bilinear;
    case Family::CarlitzTrilinear: return trilinear;
    case Family::Srivastava: return srivastava;
    case Family::Gcmf: return gcmf;
  }
  return mehler;
}

std::optional<IdentityVariant> variant_by_name(Family f, const std::string& name) {
  for (const IdentityVariant& v : variants_for(f))
    if (v.name == name) return v;
  return std::nullopt;
}

namespace {

bool is_trilinear(Family f) {
  return f == Family::CarlitzTrilinear || f == Family::Srivastava ||
         f == Family::Gcmf;
}

// Embedded Hermite polynomials H_n(x_axis) for n = 0..max_n.
std::vector<MultiPoly> embedded_hermite(const HermiteTable& table, unsigned max_n,
                                        unsigned nvars, unsigned axis) {
  std::vector<MultiPoly> out;
  out.reserve(max_n + 1);
  const MultiPoly x = MultiPoly::variable(nvars, axis);
  for (unsigned n = 0; n <= max_n; ++n)
    out.push_back(compose_univariate(table[n], x));
  return out;
}

// Shared pieces of every trilinear right side at a given truncation order.
struct TrilinearKit {
  unsigned order;
  TruncSeries delta;                 // 1 - 4u1^2 - 4u2^2 - 4u3^2 + 16u1u2u3
  std::array<TruncSeries, 3> omu;    // 1 - 4u_i^2
  TruncSeries exp_factor;            // shared exponential factor
  std::array<TruncSeries, 3> X;      // normalized Hermite arguments X_i

  explicit TrilinearKit(unsigned n)
      : order(n),
        delta(3, 3, n),
        omu{TruncSeries(3, 3, n), TruncSeries(3, 3, n), TruncSeries(3, 3, n)},
        exp_factor(3, 3, n),
        X{TruncSeries(3, 3, n), TruncSeries(3, 3, n), TruncSeries(3, 3, n)} {}
};

TruncSeries scalar_series(unsigned order, long c) {
  return TruncSeries::constant(3, 3, order, ScalarQ2(c));
}

void set_u_coeff(TruncSeries& s, std::initializer_list<std::uint32_t> e,
                 MultiPoly p) {
  s.set_coeff(Exps(e), std::move(p));
}

MultiPoly xmono(unsigned i, unsigned j, long c) {  // c * x_i x_j, 3 variables
  MultiPoly p(3);
  Exps e(3, 0);
  e[i] += 1;
  e[j] += 1;
  p.add_term(std::move(e), ScalarQ2(c));
  return p;
}

TrilinearKit make_trilinear_kit(unsigned order) {
  TrilinearKit kit(order);
  const MultiPoly one = MultiPoly::constant(3, ScalarQ2(1));

  kit.delta = scalar_series(order, 1);
  set_u_coeff(kit.delta, {2, 0, 0}, one.scaled(ScalarQ2(-4)));
  set_u_coeff(kit.delta, {0, 2, 0}, one.scaled(ScalarQ2(-4)));
  set_u_coeff(kit.delta, {0, 0, 2}, one.scaled(ScalarQ2(-4)));
  set_u_coeff(kit.delta, {1, 1, 1}, one.scaled(ScalarQ2(16)));

  for (unsigned i = 0; i < 3; ++i) {
    kit.omu[i] = scalar_series(order, 1);
    Exps e(3, 0);
    e[i] = 2;
    kit.omu[i].set_coeff(std::move(e), one.scaled(ScalarQ2(-4)));
  }

  // G = sum x_i^2 - 4 sum x_i^2 u_i^2 - 4 sum_{i<j} x_i x_j u_k
  //     + 8 sum_{i<j} u_i u_j x_i x_j,  with k the index missing from {i, j}.
  MultiPoly sum_sq = xmono(0, 0, 1) + xmono(1, 1, 1) + xmono(2, 2, 1);
  TruncSeries g(3, 3, order);
  g.set_coeff(Exps{0, 0, 0}, sum_sq);
  set_u_coeff(g, {2, 0, 0}, xmono(0, 0, -4));
  set_u_coeff(g, {0, 2, 0}, xmono(1, 1, -4));
  set_u_coeff(g, {0, 0, 2}, xmono(2, 2, -4));
  set_u_coeff(g, {0, 0, 1}, xmono(0, 1, -4));
  set_u_coeff(g, {1, 0, 0}, xmono(1, 2, -4));
  set_u_coeff(g, {0, 1, 0}, xmono(0, 2, -4));
  set_u_coeff(g, {1, 1, 0}, xmono(0, 1, 8));
  set_u_coeff(g, {0, 1, 1}, xmono(1, 2, 8));
  set_u_coeff(g, {1, 0, 1}, xmono(0, 2, 8));

  TruncSeries arg = TruncSeries::from_poly(3, order, sum_sq) -
                    g * kit.delta.pow(Rational(-1));
  kit.exp_factor = arg.exp();

  const TruncSeries inv_sqrt_delta = kit.delta.pow(Rational(-1, 2));
  for (unsigned i = 0; i < 3; ++i) {
    const unsigned j1 = (i + 1) % 3, j2 = (i + 2) % 3;
    TruncSeries num(3, 3, order);
    num.set_coeff(Exps{0, 0, 0}, MultiPoly::variable(3, i));
    {
      Exps e(3, 0);
      e[i] = 2;
      num.set_coeff(std::move(e), MultiPoly::variable(3, i).scaled(ScalarQ2(-4)));
    }
    for (unsigned j : {j1, j2}) {
      const unsigned k = 3 - i - j;
      Exps ek(3, 0);
      ek[k] = 1;
      num.add_coeff(ek, MultiPoly::variable(3, j).scaled(ScalarQ2(-2)));
      Exps eij(3, 0);
      eij[i] += 1;
      eij[j] += 1;
      num.add_coeff(eij, MultiPoly::variable(3, j).scaled(ScalarQ2(4)));
    }
    kit.X[i] = num * inv_sqrt_delta * kit.omu[i].pow(Rational(-1, 2));
  }
  return kit;
}

TruncSeries lhs_bilinear(unsigned r, unsigned s, unsigned order) {
  HermiteTable table(order + std::max(r, s));
  auto h1 = embedded_hermite(table, order + r, 2, 0);
  auto h2 = embedded_hermite(table, order + s, 2, 1);
  TruncSeries lhs(1, 2, order);
  Rational inv_fact(1);
  for (unsigned n = 0; n <= order; ++n) {
    if (n > 0) inv_fact /= n;
    lhs.set_coeff(Exps{n}, (h1[n + r] * h2[n + s]).scaled(ScalarQ2(inv_fact)));
  }
  return lhs;
}

TruncSeries lhs_trilinear(const ShiftVector& r, unsigned order) {
  const unsigned rmax = *std::max_element(r.begin(), r.end());
  HermiteTable table(order + rmax);
  std::array<std::vector<MultiPoly>, 3> h;
  for (unsigned i = 0; i < 3; ++i)
    h[i] = embedded_hermite(table, order + r[i], 3, i);
  TruncSeries lhs(3, 3, order);
  for (unsigned m = 0; m <= order; ++m)
    for (unsigned n = 0; n + m <= order; ++n)
      for (unsigned p = 0; p + n + m <= order; ++p) {
        Rational c = Rational(1) / Rational(factorial(m) * factorial(n) * factorial(p));
        MultiPoly coeff =
            (h[0][n + p + r[0]] * h[1][p + m + r[1]] * h[2][m + n + r[2]])
                .scaled(ScalarQ2(c));
        lhs.set_coeff(Exps{m, n, p}, std::move(coeff));
      }
  return lhs;
}

TruncSeries rhs_bilinear(unsigned r, unsigned s, unsigned order, bool den4) {
  const unsigned N = order;
  const MultiPoly one2 = MultiPoly::constant(2, ScalarQ2(1));
  TruncSeries omt(1, 2, N);  // 1 - 4t^2
  omt.set_coeff(Exps{0}, one2);
  omt.set_coeff(Exps{2}, one2.scaled(ScalarQ2(-4)));

  TruncSeries pref = omt.pow(frac(-(static_cast<long>(r + s) + 1), 2));

  MultiPoly x1 = MultiPoly::variable(2, 0), x2 = MultiPoly::variable(2, 1);
  TruncSeries exparg(1, 2, N);
  exparg.set_coeff(Exps{1}, (x1 * x2).scaled(ScalarQ2(4)));
  exparg.set_coeff(Exps{2}, (x1 * x1 + x2 * x2).scaled(ScalarQ2(-4)));
  exparg = exparg * omt.pow(Rational(-1));
  TruncSeries expf = exparg.exp();

  TruncSeries den(1, 2, N);  // 1 - 4t^2 or the printed 1 - t^2
  den.set_coeff(Exps{0}, one2);
  den.set_coeff(Exps{2}, one2.scaled(ScalarQ2(den4 ? -4 : -1)));
  const TruncSeries inv_sqrt_den = den.pow(Rational(-1, 2));

  TruncSeries a1(1, 2, N);  // x1 - 2 x2 t
  a1.set_coeff(Exps{0}, x1);
  a1.set_coeff(Exps{1}, x2.scaled(ScalarQ2(-2)));
  TruncSeries a2(1, 2, N);
  a2.set_coeff(Exps{0}, x2);
  a2.set_coeff(Exps{1}, x1.scaled(ScalarQ2(-2)));
  a1 = a1 * inv_sqrt_den;
  a2 = a2 * inv_sqrt_den;

  HermiteTable table(std::max(r, s));
  TruncSeries t = TruncSeries::uvariable(1, 2, N, 0);
  TruncSeries sum(1, 2, N);
  TruncSeries tk = TruncSeries::constant(1, 2, N, ScalarQ2(1));
  for (unsigned k = 0; k <= std::min(r, s); ++k) {
    if (k > 0) tk = tk * t;
    Rational c = Rational(integer_binomial(r, k)) * Rational(integer_binomial(s, k)) *
                 Rational(factorial(k)) * rational_pow(Rational(4), k);
    sum += (tk * poly_compose_series(table[r - k], a1) *
            poly_compose_series(table[s - k], a2))
               .scaled(ScalarQ2(c));
  }
  return pref * expf * sum;
}

TruncSeries rhs_srivastava(const ShiftVector& shifts, unsigned order,
                           const IdentityVariant& v, const TrilinearKit& kit) {
  const unsigned r1 = shifts[0], r2 = shifts[1];
  const unsigned rr = v.sriv_bind_r1r2 ? r1 : r2;
  const unsigned ss = v.sriv_bind_r1r2 ? r2 : r1;

  TruncSeries pref =
      kit.delta.pow(frac(-(static_cast<long>(r1 + r2) + 1), 2)) *
      kit.omu[0].pow(frac(rr, 2)) * kit.omu[1].pow(frac(ss, 2));

  TruncSeries coupling(3, 3, order);  // u3 - 2u1u2, or the printed u3 - 2u1u1
  const MultiPoly one = MultiPoly::constant(3, ScalarQ2(1));
  coupling.set_coeff(Exps{0, 0, 1}, one);
  if (v.sriv_coupling_u1u2)
    coupling.set_coeff(Exps{1, 1, 0}, one.scaled(ScalarQ2(-2)));
  else
    coupling.set_coeff(Exps{2, 0, 0}, one.scaled(ScalarQ2(-2)));

  HermiteTable table(std::max(rr, ss));
  TruncSeries sum(3, 3, order);
  const unsigned kmax = std::min(r1, r2);
  for (unsigned k = 0; k <= kmax; ++k) {
    Rational c = rational_pow(Rational(4), k) * Rational(factorial(k)) *
                 Rational(integer_binomial(rr, k)) * Rational(integer_binomial(ss, k));
    TruncSeries term = TruncSeries::constant(3, 3, order, ScalarQ2(c));
    for (unsigned j = 0; j < k; ++j) term = term * coupling;
    const Rational k1(static_cast<long>(k));
    const Rational half(Rational(-k1) / 2);
    term = term * kit.omu[0].pow(v.sriv_root_pooled ? half : Rational(-k1));
    term = term * kit.omu[1].pow(half);
    term = term * poly_compose_series(table[rr - k], kit.X[0]);
    term = term * poly_compose_series(table[ss - k], kit.X[1]);
    sum += term;
  }
  return pref * kit.exp_factor * sum;
}

TruncSeries rhs_gcmf(const ShiftVector& r, unsigned order,
                     const IdentityVariant& v, const TrilinearKit& kit) {
  using KF = IdentityVariant::GcmfKFactor;
  const long sumr = static_cast<long>(r[0] + r[1] + r[2]);

  TruncSeries pref =
      kit.delta.pow(frac(-(sumr + (v.gcmf_delta_pooled ? 1 : 3)), 2));
  for (unsigned i = 0; i < 3; ++i) pref = pref * kit.omu[i].pow(frac(r[i], 2));

  const unsigned rmax = *std::max_element(r.begin(), r.end());
  HermiteTable table(rmax);
  std::array<std::vector<TruncSeries>, 3> hx;
  for (unsigned i = 0; i < 3; ++i)
    for (unsigned n = 0; n <= r[i]; ++n)
      hx[i].push_back(poly_compose_series(table[n], kit.X[i]));

  // k-factor for position i (0-based): the printed readings carry 1/sqrt2 per
  // power; the scaled readings drop it; the shifted readings use u_{i+1}.
  auto k_factor = [&](unsigned i, unsigned k) -> TruncSeries {
    const bool shift = v.gcmf_kfac == KF::PrintedShift || v.gcmf_kfac == KF::ScaledShift;
    const bool scaled = v.gcmf_kfac == KF::Scaled || v.gcmf_kfac == KF::ScaledShift;
    const unsigned ui = shift ? i + 1 : i;
    ScalarQ2 c = scaled ? ScalarQ2(1) : ScalarQ2::inv_sqrt2().pow(k);
    if (k % 2 == 1) c = -c;
    const Rational kk(static_cast<long>(k));
    TruncSeries f = kit.delta.pow(kk / 2) * kit.omu[ui].pow(-kk / 2);
    return f.scaled(c);
  };

  TruncSeries sum(3, 3, order);
  const unsigned k1max = v.gcmf_ksum_box ? r[1] : std::min({r[0], r[1], r[2]});
  for (unsigned k1 = 0; k1 <= k1max; ++k1) {
    const unsigned k2cap =
        v.gcmf_ksum_box ? r[2] : std::min({r[0], r[1], r[2]}) - k1;
    for (unsigned k2 = 0; k2 <= k2cap; ++k2) {
      TruncSeries q = hx[0][r[0]];
      for (unsigned l = 0; l < k1; ++l) q = q.derive_x(1);
      if (q.is_zero()) continue;
      q = hx[1][r[1] - k1] * q;
      for (unsigned l = 0; l < k2; ++l) q = q.derive_x(2);
      if (q.is_zero()) continue;
      q = hx[2][r[2] - k2] * q;
      Rational binoms = Rational(integer_binomial(r[1], k1)) *
                        Rational(integer_binomial(r[2], k2));
      sum += (k_factor(0, k1) * k_factor(1, k2) * q).scaled(ScalarQ2(binoms));
    }
  }
  return pref * kit.exp_factor * sum;
}

}  // namespace

TruncSeries lhs_series(const IdentityInstance& inst) {
  validate_instance(inst);
  switch (inst.family) {
    case Family::Mehler: return lhs_bilinear(0, 0, inst.order);
    case Family::CarlitzBilinear:
      return lhs_bilinear(inst.shifts[0], inst.shifts[1], inst.order);
    case Family::CarlitzTrilinear: return lhs_trilinear({0, 0, 0}, inst.order);
    case Family::Srivastava:
      return lhs_trilinear({inst.shifts[0], inst.shifts[1], 0}, inst.order);
    case Family::Gcmf: return lhs_trilinear(inst.shifts, inst.order);
  }
  throw ConfigError("lhs_series: unknown family");
}

TruncSeries rhs_series(const IdentityInstance& inst, const IdentityVariant& v) {
  validate_instance(inst);
  switch (inst.family) {
    case Family::Mehler: return rhs_bilinear(0, 0, inst.order, true);
    case Family::CarlitzBilinear:
      return rhs_bilinear(inst.shifts[0], inst.shifts[1], inst.order,
                          v.bilinear_den_4);
    case Family::CarlitzTrilinear: {
      TrilinearKit kit = make_trilinear_kit(inst.order);
      return kit.delta.pow(Rational(-1, 2)) * kit.exp_factor;
    }
    case Family::Srivastava: {
      TrilinearKit kit = make_trilinear_kit(inst.order);
      return rhs_srivastava(inst.shifts, inst.order, v, kit);
    }
    case Family::Gcmf: {
      TrilinearKit kit = make_trilinear_kit(inst.order);
      return rhs_gcmf(inst.shifts, inst.order, v, kit);
    }
  }
  throw ConfigError("rhs_series: unknown family");
}

std::optional<MismatchInfo> first_mismatch(const TruncSeries& lhs,
                                           const TruncSeries& rhs) {
  std::optional<Exps> worst;
  auto consider = [&](const Exps& e) {
    if (!worst || std::lexicographical_compare(e.begin(), e.end(),
                                               worst->begin(), worst->end()))
      worst = e;
  };
  for (const auto& [e, p] : lhs.coeffs())
    if (rhs.coeff(e) != p) consider(e);
  for (const auto& [e, p] : rhs.coeffs())
    if (lhs.coeff(e) != p) consider(e);
  if (!worst) return std::nullopt;
  MismatchInfo info;
  info.u_exponent = *worst;
  info.lhs = lhs.coeff(*worst);
  info.rhs = rhs.coeff(*worst);
  return info;
}

VerificationReport verify_identity(const IdentityInstance& inst,
                                   const std::vector<IdentityVariant>& variants,
                                   const VerifyLimits& limits) {
  validate_instance(inst);
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  report.instance = inst;

  auto over_deadline = [&] {
    return limits.deadline && std::chrono::steady_clock::now() > *limits.deadline;
  };

  TruncSeries lhs = lhs_series(inst);
  if (lhs.term_count() > limits.max_terms) {
    report.budget_exceeded = true;
    report.budget_note = "term budget exceeded while expanding the oracle side";
  }

  if (!report.budget_exceeded) {
    // The shared trilinear pieces dominate the cost; build them once.
    std::optional<TrilinearKit> kit;
    if (is_trilinear(inst.family)) kit.emplace(make_trilinear_kit(inst.order));

    for (const IdentityVariant& v : variants) {
      if (over_deadline()) {
        report.budget_exceeded = true;
        report.budget_note = "time budget exceeded after " +
                             std::to_string(report.variants.size()) + " variant(s)";
        break;
      }
      TruncSeries rhs = [&] {
        switch (inst.family) {
          case Family::Srivastava:
            return rhs_srivastava(inst.shifts, inst.order, v, *kit);
          case Family::Gcmf: return rhs_gcmf(inst.shifts, inst.order, v, *kit);
          case Family::CarlitzTrilinear:
            return kit->delta.pow(Rational(-1, 2)) * kit->exp_factor;
          default: return rhs_series(inst, v);
        }
      }();
      if (rhs.term_count() > limits.max_terms) {
        report.budget_exceeded = true;
        report.budget_note = "term budget exceeded while expanding variant " + v.name;
        break;
      }
      VariantOutcome outcome;
      outcome.name = v.name;
      outcome.mismatch = first_mismatch(lhs, rhs);
      outcome.matched = !outcome.mismatch.has_value();
      if (outcome.matched && !report.matched_variant)
        report.matched_variant = v.name;
      report.variants.push_back(std::move(outcome));
    }
  }

  report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return report;
}

namespace {

using Mat3 = std::array<std::array<TruncSeries, 3>, 3>;

Mat3 zero_matrix(unsigned order) {
  TruncSeries z(3, 0, order);
  return {{{z, z, z}, {z, z, z}, {z, z, z}}};
}

Mat3 matmul(const Mat3& a, const Mat3& b, unsigned order) {
  Mat3 c = zero_matrix(order);
  for (unsigned i = 0; i < 3; ++i)
    for (unsigned j = 0; j < 3; ++j)
      for (unsigned k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

}  // namespace

bool cayley_check(bool corner_printed, unsigned order) {
  const unsigned N = order;
  auto scalar = [N](long c) { return TruncSeries::constant(3, 0, N, ScalarQ2(c)); };
  auto uvar = [N](unsigned j) { return TruncSeries::uvariable(3, 0, N, j); };
  auto umono = [N](std::initializer_list<std::uint32_t> e, long c) {
    TruncSeries s(3, 0, N);
    s.set_coeff(Exps(e), MultiPoly::constant(0, ScalarQ2(c)));
    return s;
  };

  Mat3 m = zero_matrix(N);
  m[0][1] = m[1][0] = uvar(2);
  m[0][2] = m[2][0] = uvar(1);
  m[1][2] = m[2][1] = uvar(0);

  Mat3 iplus = zero_matrix(N), iminus = zero_matrix(N);
  for (unsigned i = 0; i < 3; ++i)
    for (unsigned j = 0; j < 3; ++j) {
      TruncSeries two_m = m[i][j].scaled(ScalarQ2(2));
      iplus[i][j] = (i == j ? scalar(1) : TruncSeries(3, 0, N)) + two_m;
      iminus[i][j] = (i == j ? scalar(1) : TruncSeries(3, 0, N)) - two_m;
    }

  TruncSeries delta = scalar(1) + umono({2, 0, 0}, -4) + umono({0, 2, 0}, -4) +
                      umono({0, 0, 2}, -4) + umono({1, 1, 1}, 16);

  Mat3 q = zero_matrix(N);
  q[0][0] = scalar(1) + umono({2, 0, 0}, -4);
  q[1][1] = scalar(1) + umono({0, 2, 0}, -4);
  q[2][2] = scalar(1) + umono({0, 0, 2}, corner_printed ? -1 : -4);
  q[0][1] = q[1][0] = umono({1, 1, 0}, 4) + umono({0, 0, 1}, -2);
  q[0][2] = q[2][0] = umono({1, 0, 1}, 4) + umono({0, 1, 0}, -2);
  q[1][2] = q[2][1] = umono({0, 1, 1}, 4) + umono({1, 0, 0}, -2);

  const TruncSeries inv_delta = delta.pow(Rational(-1));
  Mat3 rhs_inner = zero_matrix(N);
  for (unsigned i = 0; i < 3; ++i)
    for (unsigned j = 0; j < 3; ++j) {
      rhs_inner[i][j] = q[i][j].scaled(ScalarQ2(2)) * inv_delta;
      if (i == j) rhs_inner[i][j] -= scalar(1);
    }

  Mat3 lhs = matmul(iplus, rhs_inner, N);
  for (unsigned i = 0; i < 3; ++i)
    for (unsigned j = 0; j < 3; ++j)
      if (lhs[i][j] != iminus[i][j]) return false;
  return true;
}

}  // namespace mehlerkit
