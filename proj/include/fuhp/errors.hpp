#pragma once

#include <stdexcept>
#include <string>

namespace fuhp {

/// Bad input parameter (non-prime q, square delta, degenerate radius, ...).
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain of a function (zero in a character, t < 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Radius at which a closed form has a pole.
class SingularRadius : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Character outside the family a formula is stated for (e.g. nu == nu^{-1}).
class InvalidCharacter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A closed-form family could not be matched against the spectral oracle.
class ReconciliationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Broken internal invariant; indicates a bug, not bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace fuhp
