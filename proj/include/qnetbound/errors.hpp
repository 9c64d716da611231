#pragma once

#include <stdexcept>

namespace qnetbound {

// Invalid domain input: a parameter outside its physical range, an
// inconsistent chain/network description, and so on. CLI exit code 1.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed input text: JSON syntax errors, schema violations, unknown
// field names. CLI exit code 2, same as command-line usage errors.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The two endpoints have no usable connection. CLI exit code 3.
class DisconnectedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qnetbound
