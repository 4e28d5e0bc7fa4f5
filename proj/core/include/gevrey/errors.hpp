#pragma once

#include <stdexcept>
#include <string>

namespace gevrey {

// Argument outside the mathematical domain of a function (negative x for W, h <= e, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Violated precondition of an operation: bad grid, unbounded witness, enumeration cap, ...
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// File could not be read, written or parsed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gevrey
