#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace childstat {

enum class ErrorCode {
  InvalidChildSet,
  InvalidQuery,
  NoTrees,
  DegenerateVariance,
  EnumerationTooLarge,
  NonUnitConstantTerm,
  InvalidCorrelation,
  InsufficientData,
  LeadingCoefficientZero,
};

std::string_view to_string(ErrorCode code);

// Domain error raised for invalid inputs or undefined quantities. Internal
// consistency failures (e.g. a non-integral Lagrange coefficient) are
// std::logic_error instead.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace childstat
