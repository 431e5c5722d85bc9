#pragma once

#include <stdexcept>
#include <string>

namespace permutangle {

/// Base for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape mismatch: non-square input, dimension products that do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Numerical precondition violated (non-Hermitian input, measure outside [0,1]).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Parameter outside the domain of a state family, curve or campaign.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Operation defined only for equal local dimensions.
class UnsupportedDimensionError : public Error {
 public:
  using Error::Error;
};

/// A ratio or normalisation whose denominator vanished.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

}  // namespace permutangle
