#pragma once

#include <stdexcept>
#include <string>

namespace zmd {

/// Argument outside the mathematical domain of an operation
/// (box outside a diagram, non-cover pair, empty partition where one is required).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Requested degree or level exceeds a configured cap.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Invalid Z-measure parameters (theta <= 0, wrong case, zero masses).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exact identity that must hold by construction did not.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace zmd
