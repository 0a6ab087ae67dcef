#pragma once

#include <stdexcept>
#include <string>

namespace pslab {

// Argument outside the mathematical domain of an operation (n < 2, x <= 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A checker was called on an instance that does not satisfy the hypotheses
// of the statement being checked. Distinct from a failed check.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Persisted state (checkpoint, bitset dump) failed validation.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A prime lies too close to a real window endpoint to classify reliably.
class BoundaryAmbiguityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pslab
