#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace orbicheck {

// Malformed or inconsistent input data. CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parse failure with a 1-based source location.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : InputError(what + " at line " + std::to_string(line) + ", column " +
                   std::to_string(column)),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Input whose data fails a mathematical consistency requirement (for example a group action
// that does not preserve the weights). The CLI reports it as a failed check, exit code 1.
class CheckFailed : public InputError {
 public:
  using InputError::InputError;
};

// Well-formed input outside the supported configurations.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal cross-check disagreed. Indicates a bug or corrupt data.
class InconsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace orbicheck
