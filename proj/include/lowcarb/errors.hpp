#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lowcarb {

// A single broken invariant. Violations are data; callers decide whether to throw.
struct Violation {
  std::string field;
  std::string value;
  std::string rule;

  bool operator==(const Violation&) const = default;
};

std::string to_string(const Violation& v);

// Base for every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or invalid input document. Carries a position for syntax errors
// and the full violation list for range errors.
class SpecError : public Error {
 public:
  enum class Kind { Syntax, MissingField, OutOfRange, Unknown };

  SpecError(Kind kind, std::string message, std::vector<Violation> violations = {});

  Kind kind() const noexcept { return kind_; }
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  Kind kind_;
  std::vector<Violation> violations_;
};

// Throws SpecError(OutOfRange) for a non-empty violation list, naming the first
// violation after `context`.
[[noreturn]] void throw_violations(const std::string& context, std::vector<Violation> violations);

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Calibration could not reach its residual gate.
class CalibrationError : public Error {
 public:
  CalibrationError(std::string message, double best_residual)
      : Error(std::move(message)), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

// Filesystem failure (missing input, unwritable output).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace lowcarb
