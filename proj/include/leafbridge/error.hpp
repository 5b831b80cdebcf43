#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace leafbridge {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: unknown identifiers, bad JSON, size limits.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A structure fails a named axiom that an operation requires.
class AxiomViolation : public PreconditionError {
 public:
  AxiomViolation(std::string axiom, std::vector<std::string> witness);

  const std::string& axiom() const noexcept { return axiom_; }
  const std::vector<std::string>& witness() const noexcept { return witness_; }

 private:
  std::string axiom_;
  std::vector<std::string> witness_;
};

}  // namespace leafbridge
