#pragma once

#include <stdexcept>
#include <string>

namespace spacings {

// Out-of-range parameter (n, p, i, d, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The conditioning event |S'| > i has zero probability.
class ConditioningError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Input too large for exhaustive enumeration.
class SizeError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Not enough observations to form a statistic.
class SampleSizeError : public DomainError {
 public:
  using DomainError::DomainError;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

}  // namespace detail
}  // namespace spacings
