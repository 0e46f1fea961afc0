#pragma once

#include <stdexcept>
#include <string>

namespace formspec {

// Malformed or inconsistent user input (files, group data, option values).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured computational budget was exhausted.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal consistency check failed (e.g. an averaged trace that should
// be an integer is not). Indicates a convention bug, not bad input.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace formspec
