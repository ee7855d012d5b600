#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wws {

enum class ErrorCode {
  UnknownWavelet,
  InvalidLevels,
  EmptyInput,
  ShapeMismatch,
  InvalidDepth,
  InvalidExponent,
  InvalidInterval,
  InvalidGrid,
  DomainOverflow,
  UnbalancedMarginals,
  InvalidConfig,
  ConfigMismatch,
  DegenerateFit,
  ParseError,
  IoError,
  SolverFailure,
};

std::string_view to_string(ErrorCode code);

// All library failures surface as this exception; code() identifies the
// failure class, what() carries the context.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace wws
