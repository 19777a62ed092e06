#pragma once

#include <stdexcept>
#include <string>

namespace birkhoff {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the caller's input was violated.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A zero pattern leaves no permutation matrix, so the face is empty.
class EmptyFace : public Error {
 public:
  using Error::Error;
};

/// Some factor 1 - z^b vanished while evaluating a generating function.
class PoleEncountered : public Error {
 public:
  using Error::Error;
};

/// A result that must hold by construction did not (non-integral count,
/// e(0) != 1, surviving pole, ...). Always indicates a bug.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

/// The brute-force oracle was asked for more work than its budget allows.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace birkhoff
