#pragma once

#include <stdexcept>
#include <string>

namespace itm {

/// Base of every error raised by the library. `operation()` names the
/// module operation that failed so the CLI can report it.
class Error : public std::runtime_error {
 public:
  Error(std::string operation, const std::string& what)
      : std::runtime_error(operation + ": " + what), operation_(std::move(operation)) {}
  const std::string& operation() const noexcept { return operation_; }

 private:
  std::string operation_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class InvalidMap : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class NotFiniteType : public Error {
 public:
  using Error::Error;
};

class CycleNotFound : public Error {
 public:
  using Error::Error;
};

class InconsistentRelations : public Error {
 public:
  using Error::Error;
};

class OrderViolation : public Error {
 public:
  using Error::Error;
};

class AtomicMeasure : public Error {
 public:
  using Error::Error;
};

class NotInvariant : public Error {
 public:
  using Error::Error;
};

class HitDiscontinuity : public Error {
 public:
  using Error::Error;
};

}  // namespace itm
