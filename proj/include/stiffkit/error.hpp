#pragma once

#include <stdexcept>
#include <string>

namespace stiffkit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the arguments was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Sum of two surds whose radicands differ.
class MixedRadicand : public Error {
 public:
  using Error::Error;
};

/// A code or report file could not be parsed or failed validation.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A configured size or enumeration cap would be exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// The code does not span the ambient space, so no basis can be selected.
class NotInGeneralPosition : public Error {
 public:
  using Error::Error;
};

/// A singular kernel was evaluated at a point of the code.
class SingularEvaluation : public Error {
 public:
  using Error::Error;
};

/// An iterative numeric procedure did not reach its tolerance.
class NumericFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace stiffkit
