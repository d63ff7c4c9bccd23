#pragma once

#include <stdexcept>
#include <string>

namespace spinent {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameters outside the physical domain (e.g. a Bose fugacity at or past
/// the condensation point, an odd lattice size).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Caller violated an operation precondition that is not a physics-domain
/// issue (wrong statistics for the operation, too few particles, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Mean particle number vanished, so ratios such as P are undefined.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// Iterative solver failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Root bracket without a sign change.
class BracketError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

/// Configuration could not be parsed or resolved.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Reading or writing files failed.
class IoError : public Error {
 public:
  using Error::Error;
};

// Re-throws the active exception with `context` prepended to its message,
// keeping the dynamic type so callers can still dispatch on it.
[[noreturn]] void rethrow_with_context(const std::string& context);

}  // namespace spinent
