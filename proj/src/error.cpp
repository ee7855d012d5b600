#include "wws/error.hpp"

namespace wws {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownWavelet: return "UnknownWavelet";
    case ErrorCode::InvalidLevels: return "InvalidLevels";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::InvalidDepth: return "InvalidDepth";
    case ErrorCode::InvalidExponent: return "InvalidExponent";
    case ErrorCode::InvalidInterval: return "InvalidInterval";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::DomainOverflow: return "DomainOverflow";
    case ErrorCode::UnbalancedMarginals: return "UnbalancedMarginals";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ConfigMismatch: return "ConfigMismatch";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::SolverFailure: return "SolverFailure";
  }
  return "Unknown";
}

}  // namespace wws
