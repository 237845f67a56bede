#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sentinel {

// Base for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid distribution or configuration parameters.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of an operation (e.g. u not in (0,1)).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Mismatched or empty inputs.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A cell would enter the randomized set with zero null mass.
class DegenerateMassError : public Error {
 public:
  using Error::Error;
};

// A caller-supplied function handle broke its documented contract.
class ContractError : public Error {
 public:
  using Error::Error;
};

// The alternative puts mass where the null has none.
class AbsoluteContinuityError : public Error {
 public:
  using Error::Error;
};

// Problems with panel data (no included cells, zero population, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

class EmptyPanelError : public DataError {
 public:
  using DataError::DataError;
};

// Exact enumeration would exceed its size budget.
class SizeError : public Error {
 public:
  using Error::Error;
};

// Ingestion failure tied to a line of the input file (1-based; 0 = whole file).
class InputError : public Error {
 public:
  InputError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ParseError : public InputError {
 public:
  using InputError::InputError;
};

class ValidationError : public InputError {
 public:
  using InputError::InputError;
};

class DuplicateKeyError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ExcludedRegionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace sentinel
