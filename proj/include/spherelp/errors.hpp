#pragma once

#include <stdexcept>
#include <string>

namespace spherelp {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Inner product s outside the validity interval of the requested Levenshtein degree.
class ValidityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A theorem hypothesis (potential class, capacity interval) does not hold.
class HypothesisError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An internal consistency check failed (complex nodes, non-positive weights, lost exactness).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spherelp
