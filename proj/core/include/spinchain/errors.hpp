#pragma once

#include <stdexcept>

namespace spinchain {

// Malformed chain parameters or user input.
class InvalidSpec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Requested instance exceeds the configured dimension budget.
class InstanceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The thermal energy never crosses the separable minimum (gap not positive).
class NoCrossing : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Eigensolver did not converge or produced out-of-tolerance residuals.
class EigensolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Filesystem failure while reading or writing an artifact (cache, output file).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spinchain
