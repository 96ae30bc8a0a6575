#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace actnet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller supplied a value outside an operation's domain. `key()` names
/// the offending parameter so front ends can report it verbatim.
class ValidationError : public Error {
 public:
  ValidationError(std::string key, const std::string& message);

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A randomized generator gave up after its bounded number of restarts.
class RetryExhausted : public Error {
 public:
  using Error::Error;
};

/// The coalescence system could not be solved (singular, disconnected, or
/// too large for the configured bound).
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace actnet
