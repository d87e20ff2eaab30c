// SPDX-License-Identifier: MIT
// Copyright (c) 2026 stablefield-cov contributors
#pragma once

#include <stdexcept>
#include <string>

namespace stablefield {

/// @brief Base class for all library exceptions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// @brief A model or routine parameter lies outside its admissible domain.
class InvalidParameterError : public Error {
 public:
  using Error::Error;
};

/// @brief An integral or series diverges for the requested exponents.
class NonIntegrableError : public Error {
 public:
  using Error::Error;
};

/// @brief A logarithmic rate factor was evaluated where its argument is <= 1.
class LogDomainError : public Error {
 public:
  using Error::Error;
};

/// @brief A limiting constant cannot be produced for the given field.
class ConstantEvaluationError : public Error {
 public:
  using Error::Error;
};

/// @brief A regime choice depends on the lag direction but none was given.
class DirectionRequiredError : public Error {
 public:
  using Error::Error;
};

/// @brief Too few tail exceedances survive the threshold to form an estimate.
class TooFewExceedancesError : public Error {
 public:
  using Error::Error;
};

/// @brief Plain truncation would discard more filter mass than allowed.
class TruncationTooCoarseError : public Error {
 public:
  using Error::Error;
};

/// @brief A marginal spectral mass is zero, so normalized quantities are
/// undefined (possible only for degenerate override filters).
class DegenerateMarginalError : public Error {
 public:
  using Error::Error;
};

/// @brief The requested accuracy could not be certified within budget.
///
/// Carries the best value reached and the (honest) bound that was achieved,
/// so callers can decide whether the partial answer is still useful.
class ToleranceUnreachableError : public Error {
 public:
  ToleranceUnreachableError(const std::string& what, double best_value,
                            double achieved_bound)
      : Error(what), best_value(best_value), achieved_bound(achieved_bound) {}

  double best_value;
  double achieved_bound;
};

}  // namespace stablefield
