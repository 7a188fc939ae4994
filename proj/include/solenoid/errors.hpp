#pragma once

#include <stdexcept>
#include <string>

namespace solenoid {

// Every error carries the process exit code the CLI maps it to.
class Error : public std::runtime_error {
 public:
  Error(const std::string& what, int exit_code)
      : std::runtime_error(what), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

 private:
  int exit_code_;
};

/// Malformed or inconsistent input: bad dimensions, non-descending chains,
/// elements outside the ambient group.
class StructuralError : public Error {
 public:
  explicit StructuralError(const std::string& what) : Error(what, 2) {}
};

class DegenerateLatticeError : public StructuralError {
 public:
  explicit DegenerateLatticeError(const std::string& what)
      : StructuralError(what) {}
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what) : Error(what, 2) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error("line " + std::to_string(line) + ", column " +
                  std::to_string(column) + ": " + what,
              2),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// A configured cap (coset index, pairwise address count, word states) or
/// the 64-bit range of exact arithmetic was exceeded.
class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what) : Error(what, 3) {}
};

class InvariantViolation : public Error {
 public:
  explicit InvariantViolation(const std::string& what) : Error(what, 4) {}
};

}  // namespace solenoid
