#pragma once

#include <stdexcept>
#include <string>

namespace nml {

/// Malformed or out-of-range input (schema violations, unknown names,
/// dimension mismatches). The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called on an argument that does not meet its
/// precondition, e.g. representing a table that is not a C-logic.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace nml
