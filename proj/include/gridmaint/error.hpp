#pragma once

#include <stdexcept>
#include <string>

namespace gridmaint {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

// Backend cannot represent part of a model (e.g. cone rows on an LP/MIP-only backend).
class CapabilityError : public SolverError {
 public:
  using SolverError::SolverError;
};

class LimitReached : public Error {
 public:
  using Error::Error;
};

}  // namespace gridmaint
