#pragma once

#include <stdexcept>
#include <string>

namespace toposcope {

/// Raised for malformed or unusable input data (files, labels, capacities).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a computation cannot be carried out on a well-formed input.
class ComputeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace toposcope
