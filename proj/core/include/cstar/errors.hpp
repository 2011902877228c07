#pragma once

#include <stdexcept>
#include <string>

namespace cstar {

/// Bad argument value (negative where non-negative required, empty interval, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operands from different instances or of different dimension.
class InstanceMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Input does not parse against the element/query schemas.
class SchemaError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A precondition could not be confirmed at the configured check precision.
/// Upper reals only semi-decide strict inequalities, so this is not a refutation.
class PreconditionUnverifiable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exact self-check failed. Indicates a bug, never a property of the input.
class InternalVerificationFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cstar
