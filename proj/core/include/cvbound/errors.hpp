#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cvbound {

/// Bad arguments, malformed files, violated preconditions. CLI exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A dataset line that failed to parse or validate.
class DatasetError : public InputError {
 public:
  DatasetError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Non-convergence or a result that cannot be certified. CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cvbound
