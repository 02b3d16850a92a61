#pragma once

#include <stdexcept>
#include <string>

namespace bellbound {

/// Malformed input: dangling variable index, bad pattern literal, unparsable text.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Well-formed input outside the domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The solver or a derivation could not produce a certified result.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bellbound
