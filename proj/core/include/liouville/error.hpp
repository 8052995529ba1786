#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace liouville {

enum class ErrorKind {
  NonUnitaryInput,
  OutOfRange,
  NearSingular,
  NotNormalized,
  NonHamiltonianSystem,
  EmptyEnsemble,
  GridTooCoarse,
  StabilityViolation,
  TooFewSamples,
  NotConverged,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonUnitaryInput: return "NonUnitaryInput";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NearSingular: return "NearSingular";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::NonHamiltonianSystem: return "NonHamiltonianSystem";
    case ErrorKind::EmptyEnsemble: return "EmptyEnsemble";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::StabilityViolation: return "StabilityViolation";
    case ErrorKind::TooFewSamples: return "TooFewSamples";
    case ErrorKind::NotConverged: return "NotConverged";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Numerical precondition or convergence failure raised by the core library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace liouville
