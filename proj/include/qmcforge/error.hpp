#pragma once

#include <stdexcept>
#include <string>

namespace qmcforge {

// Invalid argument or violated precondition.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A valid request that the chosen method cannot serve (e.g. fast CBC on a
// composite lattice size). Callers can fall back to a slower method.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// Malformed input text; carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace qmcforge
