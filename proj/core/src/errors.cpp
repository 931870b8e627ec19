#include "specrank/errors.hpp"

namespace specrank {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kConstantScores: return "ConstantScores";
    case ErrorKind::kZeroExpectedDegree: return "ZeroExpectedDegree";
    case ErrorKind::kZeroMatrix: return "ZeroMatrix";
    case ErrorKind::kNoConvergence: return "NoConvergence";
    case ErrorKind::kIsolatedNode: return "IsolatedNode";
    case ErrorKind::kTooLarge: return "TooLarge";
    case ErrorKind::kZeroVector: return "ZeroVector";
    case ErrorKind::kNotAPermutation: return "NotAPermutation";
    case ErrorKind::kOutOfRegime: return "OutOfRegime";
    case ErrorKind::kNonRectangularGrid: return "NonRectangularGrid";
    case ErrorKind::kConfig: return "Config";
    case ErrorKind::kIo: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(what), kind_(kind) {}

IsolatedNodeError::IsolatedNodeError(std::size_t node)
    : Error(ErrorKind::kIsolatedNode,
            "item " + std::to_string(node) + " has no observed comparisons"),
      node_(node) {}

NoConvergenceError::NoConvergenceError(int iterations, double residual,
                                       const std::string& detail)
    : Error(ErrorKind::kNoConvergence,
            "no convergence after " + std::to_string(iterations) +
                " iterations (residual " + std::to_string(residual) + "): " +
                detail),
      iterations_(iterations),
      residual_(residual) {}

ConfigError::ConfigError(std::size_t line, const std::string& what)
    : Error(ErrorKind::kConfig,
            line == 0 ? what : "line " + std::to_string(line) + ": " + what),
      line_(line) {}

}  // namespace specrank
