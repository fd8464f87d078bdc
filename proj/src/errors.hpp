#pragma once

#include <stdexcept>
#include <string>

namespace mehlerkit {

// Mismatched variable counts or truncation orders between operands.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Wrong arity (e.g. a multivariate polynomial where a univariate one is required).
struct ArityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Rational power of a series whose constant term is not 1.
struct NonUnitError : std::domain_error {
  using std::domain_error::domain_error;
};

// Exponential of a series whose constant term is nonzero.
struct NonNilpotentError : std::domain_error {
  using std::domain_error::domain_error;
};

// A square root that does not lie in Q(sqrt2).
struct RadicalError : std::domain_error {
  using std::domain_error::domain_error;
};

// Unusable configuration (bad family, negative order, unknown variant, ...).
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Resource budget exhausted; partial results may still be reported.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical preconditions violated (singular matrix, divergent integrand,
// ill-conditioned fit, ...).
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mehlerkit
