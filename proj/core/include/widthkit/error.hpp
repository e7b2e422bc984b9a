#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace widthkit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input text did not conform to the netlist or BP grammar, or described an
/// invalid structure. `line()` is 1-based; 0 when no single line is at fault.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class InvalidCircuit : public Error {
 public:
  using Error::Error;
};

class LimitExceeded : public Error {
 public:
  using Error::Error;
};

class MissingVariable : public Error {
 public:
  using Error::Error;
};

}  // namespace widthkit
