#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace specrank {

enum class ErrorKind {
  kInvalidArgument,
  kConstantScores,
  kZeroExpectedDegree,
  kZeroMatrix,
  kNoConvergence,
  kIsolatedNode,
  kTooLarge,
  kZeroVector,
  kNotAPermutation,
  kOutOfRegime,
  kNonRectangularGrid,
  kConfig,
  kIo,
};

std::string_view to_string(ErrorKind kind);

// Base for every failure raised by the library. The kind is stable and is
// what the experiment harness writes into the `error` column.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class IsolatedNodeError : public Error {
 public:
  explicit IsolatedNodeError(std::size_t node);
  std::size_t node() const noexcept { return node_; }

 private:
  std::size_t node_;
};

class NoConvergenceError : public Error {
 public:
  NoConvergenceError(int iterations, double residual, const std::string& detail);
  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

class ConfigError : public Error {
 public:
  ConfigError(std::size_t line, const std::string& what);
  // 0 when the problem is not tied to a particular line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace specrank
