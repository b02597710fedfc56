#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wmark {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arguments violate an operation's contract (dimensions, parameter
/// ranges, non-finite values).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// An iterative kernel exceeded its sweep cap without converging.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A key was presented to an operation it does not belong to.
class WrongKeyError : public Error {
 public:
  using Error::Error;
};

/// Normalized correlation requested for an all-zero signal.
class UndefinedCorrelation : public Error {
 public:
  using Error::Error;
};

/// Filesystem or OS-level failure.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Structurally invalid file contents. Carries the byte offset at which
/// parsing failed, or -1 when no single offset applies.
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what, std::ptrdiff_t byte_offset = -1)
      : Error(what), byte_offset_(byte_offset) {}

  std::ptrdiff_t byte_offset() const { return byte_offset_; }

 private:
  std::ptrdiff_t byte_offset_;
};

}  // namespace wmark
