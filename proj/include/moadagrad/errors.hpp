#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace moadagrad {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: wrong dimensions, non-finite inputs, out-of-range parameters.
class InputError : public Error {
 public:
  using Error::Error;
};

/// An objective or gradient evaluated to a non-finite value.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, std::size_t index)
      : Error(what), index_(index) {}
  /// Offending entry (objective index, or row-major Jacobian index).
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// Unknown problem, solver or example name.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// Invalid experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Backtracking shrank the step below the configured floor.
class StallError : public Error {
 public:
  using Error::Error;
};

/// Experiment orchestration failed, e.g. a required reference run is missing.
class OrchestrationError : public Error {
 public:
  using Error::Error;
};

/// File-system failures, always carrying the path.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace moadagrad
