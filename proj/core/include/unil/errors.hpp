#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace unil {

/// Base class for every domain error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different coefficient rings.
class RingMismatch : public Error {
 public:
  using Error::Error;
};

/// A pair (u, v) that is not the image of an element of Z[C2][x].
class NotInImage : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// An exact division that does not go through over the ring.
class NotDivisible : public Error {
 public:
  using Error::Error;
};

/// Input violates the documented precondition of an operation.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Failure inside a multi-stage pipeline. Carries the stage name and, when
/// available, the offending matrix rendered in the text grammar.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& message,
             std::string matrix = {})
      : Error("[" + stage + "] " + message +
              (matrix.empty() ? std::string{} : "\n  offending: " + matrix)),
        stage_(std::move(stage)),
        matrix_(std::move(matrix)) {}

  const std::string& stage() const noexcept { return stage_; }
  const std::string& matrix() const noexcept { return matrix_; }

 private:
  std::string stage_;
  std::string matrix_;
};

/// A derivation step that cannot be applied.
class RuleError : public Error {
 public:
  using Error::Error;
};

}  // namespace unil
