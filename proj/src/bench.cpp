#include "bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "hermite.hpp"

namespace mehlerkit {

double gcmf_closed_eval(const std::array<double, 3>& x,
                        const std::array<double, 3>& u, const ShiftVector& r) {
  const double delta = 1.0 - 4 * (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]) +
                       16 * u[0] * u[1] * u[2];
  std::array<double, 3> omu;
  for (unsigned i = 0; i < 3; ++i) omu[i] = 1.0 - 4 * u[i] * u[i];

  const double sumr = static_cast<double>(r[0] + r[1] + r[2]);
  double pref = std::pow(delta, -(sumr + 1.0) / 2.0);
  for (unsigned i = 0; i < 3; ++i) pref *= std::pow(omu[i], r[i] / 2.0);

  double sum_sq = 0.0, g = 0.0;
  for (unsigned i = 0; i < 3; ++i) sum_sq += x[i] * x[i];
  g = sum_sq;
  for (unsigned i = 0; i < 3; ++i) g -= 4 * x[i] * x[i] * u[i] * u[i];
  g -= 4 * (x[0] * x[1] * u[2] + x[1] * x[2] * u[0] + x[0] * x[2] * u[1]);
  g += 8 * (u[0] * u[1] * x[0] * x[1] + u[1] * u[2] * x[1] * x[2] +
            u[0] * u[2] * x[0] * x[2]);
  const double expf = std::exp(sum_sq - g / delta);

  // X_i as linear polynomials in x with numeric coefficients.
  const unsigned rmax = *std::max_element(r.begin(), r.end());
  HermiteTable table(rmax);
  std::array<DoublePoly, 3> X{DoublePoly(3), DoublePoly(3), DoublePoly(3)};
  for (unsigned i = 0; i < 3; ++i) {
    const double norm = 1.0 / std::sqrt(delta * omu[i]);
    DoublePoly lin(3);
    lin.add_term([&] { Exps e(3, 0); e[i] = 1; return e; }(), omu[i] * norm);
    for (unsigned j = 0; j < 3; ++j) {
      if (j == i) continue;
      const unsigned k = 3 - i - j;
      Exps e(3, 0);
      e[j] = 1;
      lin.add_term(std::move(e), -2.0 * (u[k] - 2.0 * u[i] * u[j]) * norm);
    }
    X[i] = lin;
  }

  auto hx = [&](unsigned n, unsigned i) {
    return compose_univariate(to_double_poly(table[n]), X[i]);
  };

  double sum = 0.0;
  const std::vector<double> xp(x.begin(), x.end());
  for (unsigned k1 = 0; k1 <= r[1]; ++k1) {
    for (unsigned k2 = 0; k2 <= r[2]; ++k2) {
      DoublePoly q = hx(r[0], 0);
      for (unsigned l = 0; l < k1; ++l) q = q.derive(1);
      if (q.is_zero()) continue;
      q = hx(r[1] - k1, 1) * q;
      for (unsigned l = 0; l < k2; ++l) q = q.derive(2);
      if (q.is_zero()) continue;
      q = hx(r[2] - k2, 2) * q;
      const double f1 = std::pow(-std::sqrt(delta / omu[1]), k1);
      const double f2 = std::pow(-std::sqrt(delta / omu[2]), k2);
      sum += f1 * f2 * integer_binomial(r[1], k1).get_d() *
             integer_binomial(r[2], k2).get_d() * q.eval(xp);
    }
  }
  return pref * expf * sum;
}

double gcmf_naive_sum(const std::array<double, 3>& x,
                      const std::array<double, 3>& u, const ShiftVector& r,
                      unsigned per_index_budget, unsigned long& terms_used,
                      bool& diverged) {
  const unsigned B = per_index_budget;
  const unsigned rmax = *std::max_element(r.begin(), r.end());
  const unsigned hmax = 2 * B + rmax;
  std::array<std::vector<double>, 3> h;
  for (unsigned i = 0; i < 3; ++i) {
    h[i].resize(hmax + 1);
    h[i][0] = 1.0;
    if (hmax >= 1) h[i][1] = 2.0 * x[i];
    for (unsigned k = 1; k < hmax; ++k)
      h[i][k + 1] = 2.0 * x[i] * h[i][k] - 2.0 * k * h[i][k - 1];
  }
  std::array<std::vector<double>, 3> upow;
  for (unsigned i = 0; i < 3; ++i) {
    upow[i].resize(B + 1);
    upow[i][0] = 1.0;
    for (unsigned m = 1; m <= B; ++m) upow[i][m] = upow[i][m - 1] * u[i] / m;
  }

  // Accumulate by total-degree shells so divergence shows up as shell growth.
  std::vector<double> shell(3 * B + 1, 0.0);
  double total = 0.0;
  terms_used = 0;
  for (unsigned m = 0; m <= B; ++m)
    for (unsigned n = 0; n <= B; ++n)
      for (unsigned p = 0; p <= B; ++p) {
        const double term = h[0][n + p + r[0]] * h[1][p + m + r[1]] *
                            h[2][m + n + r[2]] * upow[0][m] * upow[1][n] *
                            upow[2][p];
        total += term;
        shell[m + n + p] += std::abs(term);
        ++terms_used;
      }

  // Ratio test on the complete degree shells (degree <= B; higher shells are
  // clipped by the box and not comparable).
  double scale = 0.0;
  for (unsigned q = 0; q <= B; ++q) scale = std::max(scale, shell[q]);
  diverged = !std::isfinite(total) ||
             (B >= 3 && shell[B] > shell[B - 1] && shell[B - 1] > shell[B - 2] &&
              shell[B] > 1e-100 * scale);
  return total;
}

BenchResult bench_point(const BenchPoint& point, unsigned per_index_budget) {
  using clock = std::chrono::steady_clock;
  BenchResult out;
  out.point = point;

  const auto t0 = clock::now();
  bool diverged = false;
  out.naive_value = gcmf_naive_sum(point.x, point.u, point.r, per_index_budget,
                                   out.terms_used, diverged);
  out.naive_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();

  if (diverged) {
    out.skipped = true;
    out.note = "naive sum diverges at this |u|; point skipped";
    return out;
  }

  const auto t1 = clock::now();
  out.closed_value = gcmf_closed_eval(point.x, point.u, point.r);
  out.closed_ms = std::chrono::duration<double, std::milli>(clock::now() - t1).count();

  const double denom = std::max({std::abs(out.naive_value),
                                 std::abs(out.closed_value), 1e-300});
  out.rel_diff = std::abs(out.naive_value - out.closed_value) / denom;
  return out;
}

std::vector<BenchPoint> default_bench_points() {
  std::vector<BenchPoint> pts;
  const std::vector<std::array<double, 3>> xs = {
      {1.0, 1.0, 1.0}, {0.4, -0.2, 0.1}, {1.5, 0.5, -1.0}};
  const std::vector<std::array<double, 3>> us = {
      {0.05, 0.05, 0.05}, {0.05, 0.03, 0.02}, {0.02, -0.04, 0.01}};
  const std::vector<ShiftVector> rs = {{0, 0, 0}, {1, 0, 0}, {1, 1, 1}, {2, 1, 2}};
  for (const auto& r : rs)
    for (std::size_t i = 0; i < xs.size(); ++i)
      pts.push_back(BenchPoint{xs[i], us[i], r});
  return pts;
}

}  // namespace mehlerkit
