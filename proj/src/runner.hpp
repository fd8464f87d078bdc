#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nlohmann/json.hpp"

#include "gaussian_ops.hpp"

namespace mehlerkit {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string command = "verify";  // verify | bench | bargmann-check
  std::string family = "all";
  std::optional<ShiftVector> shifts;
  std::optional<unsigned> order;
  std::string variant = "all";
  std::uint64_t seed = 1;
  std::uint64_t budget_terms = 4'000'000;
  double budget_seconds = 0.0;  // 0 = unlimited
  unsigned nodes = 64;
  std::optional<double> tolerance;      // default depends on the command
  double roundtrip_tolerance = 1e-4;    // truncation-dominated check
  unsigned workers = 0;                 // 0 = hardware concurrency
};

// Parses and validates; throws ConfigError with a human-readable message.
RunConfig parse_config(const std::string& config_json);

struct RunOutput {
  Json json;
  std::string text;
  bool passed = false;
  bool budget_exceeded = false;
};

RunOutput run(const RunConfig& config);

// Deterministic random symmetric matrices with representable radicals:
// diagonals drawn from a pool with sqrt(1 + a_ii) in Q(sqrt2) (or sqrt(a_ii)
// when for_lemma is set), off-diagonals from a small rational pool.
std::vector<QuadForm> seeded_matrices(unsigned dim, unsigned count,
                                      std::uint64_t seed, bool for_lemma);

const char* version_string();

}  // namespace mehlerkit
