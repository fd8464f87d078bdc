#pragma once

#include <array>
#include <string>
#include <vector>

#include "gaussian_ops.hpp"

namespace mehlerkit {

struct BenchPoint {
  std::array<double, 3> x{};
  std::array<double, 3> u{};
  ShiftVector r{0, 0, 0};
};

struct BenchResult {
  BenchPoint point;
  double naive_value = 0.0;
  unsigned long terms_used = 0;
  double closed_value = 0.0;
  double rel_diff = 0.0;
  double naive_ms = 0.0;
  double closed_ms = 0.0;
  bool skipped = false;
  std::string note;
};

// Generalized Carlitz-Mehler closed form evaluated in floating point at one
// (x, u) under the oracle-resolved reading (pooled Delta power, rescaled and
// index-shifted k-factor, box k-sum).
double gcmf_closed_eval(const std::array<double, 3>& x,
                        const std::array<double, 3>& u, const ShiftVector& r);

// Naive truncated triple sum; flags divergence when the degree shells keep
// growing near the budget.
double gcmf_naive_sum(const std::array<double, 3>& x,
                      const std::array<double, 3>& u, const ShiftVector& r,
                      unsigned per_index_budget, unsigned long& terms_used,
                      bool& diverged);

BenchResult bench_point(const BenchPoint& point, unsigned per_index_budget);

// Deterministic default bench grid.
std::vector<BenchPoint> default_bench_points();

}  // namespace mehlerkit
