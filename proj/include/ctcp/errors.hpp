#pragma once

#include <stdexcept>
#include <string>

namespace ctcp {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed CTCP-v1 text.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

// Instance failed validation with at least one hard violation.
class InvalidInstance : public Error {
 public:
  using Error::Error;
};

// Exhaustive routine asked to run above its size gate.
class TooLarge : public Error {
 public:
  using Error::Error;
};

class EmptySet : public Error {
 public:
  using Error::Error;
};

class AlphaRange : public Error {
 public:
  using Error::Error;
};

class MalformedForest : public Error {
 public:
  using Error::Error;
};

}  // namespace ctcp
