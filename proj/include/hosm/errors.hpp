#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hosm {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (bad token, unreadable stream).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed input that violates a data-model rule (e.g. repeated vertex in an edge).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Structural mismatch between the files of a multi-file dataset.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of an operation (s out of range, node set too large, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input the operation cannot work on at all (e.g. sampling an edgeless graph).
class UnsupportedInput : public Error {
 public:
  using Error::Error;
};

/// An internal invariant failed; indicates a construction bug rather than bad input.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace hosm
