#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chromacert {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A map that must be invertible (g or g - I) is singular.
class SingularMapError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// No finite scan cutoff T makes the tail bound small enough.
class UnsatisfiableCutoffError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed coloring file; line() is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace chromacert
