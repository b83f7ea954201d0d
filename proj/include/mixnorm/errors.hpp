#ifndef MIXNORM_ERRORS_HPP
#define MIXNORM_ERRORS_HPP

#include <stdexcept>

namespace mixnorm {

// Error taxonomy shared across the library. The CLI maps each type to a
// distinct process exit code, so keep the hierarchy flat and stable.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside an operation's mathematical domain (bad exponent,
/// wrong tuple length, malformed rational string).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Tensor rank or dimension mismatch.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Enumeration or memory budget exceeded.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// File or serialization failure.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A bound that holds by theorem was violated numerically. This is never a
/// user error; it indicates a bug in the library itself.
class HardAssertionError : public Error {
 public:
  using Error::Error;
};

}  // namespace mixnorm

#endif  // MIXNORM_ERRORS_HPP
