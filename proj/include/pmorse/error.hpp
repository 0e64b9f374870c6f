#pragma once

#include <stdexcept>
#include <string>

namespace pmorse {

// Process exit codes used by the command line tool.
enum class ExitCode : int {
  kCertified = 0,
  kCertificationFailed = 1,
  kInputError = 2,
  kInternalError = 3,
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const noexcept = 0;
};

// Malformed or inconsistent user input (files, arguments, preconditions).
class InputError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kInputError; }
};

// A combinatorial assumption does not hold (flagness, cube shape, ...).
class StructuralError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override {
    return ExitCode::kCertificationFailed;
  }
};

// A certification step failed; the message names the first failing item.
class CertificationError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override {
    return ExitCode::kCertificationFailed;
  }
};

// Hard-coded data or an internal invariant turned out to be inconsistent.
class InternalError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override {
    return ExitCode::kInternalError;
  }
};

}  // namespace pmorse
