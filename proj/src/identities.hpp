#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gaussian_ops.hpp"
#include "trunc_series.hpp"

namespace mehlerkit {

// The five generating-function families.  Bilinear families live in one
// formal variable t with x_1, x_2; trilinear families in u_1, u_2, u_3 with
// x_1, x_2, x_3.
enum class Family {
  Mehler,
  CarlitzBilinear,
  CarlitzTrilinear,
  Srivastava,
  Gcmf,
};

std::string family_name(Family f);
std::optional<Family> family_from_name(const std::string& name);

struct IdentityInstance {
  Family family = Family::Mehler;
  ShiftVector shifts;  // size 2 for carlitz-bilinear/srivastava, 3 for gcmf
  unsigned order = 0;
};

// Throws ConfigError when the shift arity does not match the family.
void validate_instance(const IdentityInstance& inst);

// One plausible reading of the printed right-hand side.  Suspect locations
// each get a flag; the brute-force left side decides which combination is the
// true identity.
struct IdentityVariant {
  enum class GcmfKFactor { Printed, PrintedShift, Scaled, ScaledShift };

  std::string name;

  // carlitz-bilinear: Hermite arguments over sqrt(1-4t^2) vs printed sqrt(1-t^2)
  bool bilinear_den_4 = true;

  // srivastava
  bool sriv_coupling_u1u2 = true;  // (u3 - 2u1u2) vs printed (u3 - 2u1u1)
  bool sriv_bind_r1r2 = true;      // free symbols (r, s) bound to (r1, r2) vs (r2, r1)
  bool sriv_root_pooled = true;    // ((1-4u1^2)(1-4u2^2))^{1/2} vs printed (1-4u1^2)(1-4u2^2)^{1/2}

  // gcmf
  bool gcmf_delta_pooled = true;  // Delta^{-(r1+r2+r3+1)/2} vs printed per-factor product
  GcmfKFactor gcmf_kfac = GcmfKFactor::ScaledShift;
  bool gcmf_ksum_box = true;      // k_i <= r_{i+1} vs printed simplex sum k_i <= min(r)
};

// Deterministically ordered variant list per family.
const std::vector<IdentityVariant>& variants_for(Family f);
std::optional<IdentityVariant> variant_by_name(Family f, const std::string& name);

// Brute-force oracle side: the shifted Hermite sum expanded term by term.
TruncSeries lhs_series(const IdentityInstance& inst);

// Closed-form side under a chosen reading.
TruncSeries rhs_series(const IdentityInstance& inst, const IdentityVariant& v);

struct MismatchInfo {
  Exps u_exponent;  // lexicographically smallest failing exponent
  MultiPoly lhs{0};
  MultiPoly rhs{0};
};

std::optional<MismatchInfo> first_mismatch(const TruncSeries& lhs,
                                           const TruncSeries& rhs);

struct VariantOutcome {
  std::string name;
  bool matched = false;
  std::optional<MismatchInfo> mismatch;
};

struct VerificationReport {
  IdentityInstance instance;
  std::vector<VariantOutcome> variants;
  std::optional<std::string> matched_variant;  // first matching, enumeration order
  std::int64_t elapsed_ms = 0;
  bool budget_exceeded = false;
  std::string budget_note;
};

struct VerifyLimits {
  std::size_t max_terms = 4'000'000;  // cap on stored series terms per side
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

VerificationReport verify_identity(const IdentityInstance& inst,
                                   const std::vector<IdentityVariant>& variants,
                                   const VerifyLimits& limits = {});

// Cayley-transform matrix identity (I+2M) (-I + (2/Delta) Q) = I - 2M in the
// ring of 3x3 matrices over rational-coefficient truncated series.  The
// printed corner entry of Q reads 1-u3^2; the variant flag tests 1-4u3^2.
bool cayley_check(bool corner_printed, unsigned order);

}  // namespace mehlerkit
