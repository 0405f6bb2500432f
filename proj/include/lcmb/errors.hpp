#pragma once

#include <stdexcept>

namespace lcmb {

/// Input outside the domain of an operation (s <= 1, r = 1 for an
/// r-dependent bound, composite p where a prime is required, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A bound was asked for outside the parameter range where it holds.
class HypothesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured size limit (sieve cap, big-integer bit budget) would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An identity that must always hold was observed to fail.
class IntegrityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace lcmb
