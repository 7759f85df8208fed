#pragma once

#include <stdexcept>
#include <string>

namespace islands {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A constructed object failed its own post-construction verification.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Quadrature or root finding did not reach the requested accuracy.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inconsistent or inadmissible user parameters.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The requested configuration cannot host the candidate region.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid curve geometry (self-intersection, orientation, too few vertices).
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reading or writing a report file failed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace islands
