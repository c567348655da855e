#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hu {

// Bad construction input or a violated structural precondition.
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// A closure, enumeration or search outgrew its cap. Carries how far it got,
// so callers can report the frontier size instead of silently truncating.
class CapExceededError : public std::runtime_error {
public:
  CapExceededError(const std::string& what, std::size_t reached)
      : std::runtime_error(what + " (reached " + std::to_string(reached) + ")"),
        reached_(reached) {}
  std::size_t reached() const noexcept { return reached_; }

private:
  std::size_t reached_;
};

// A matrix that is not invertible over its ring. Kept distinct from a plain
// `false` so callers can tell "not a group element" from "not unitary".
class SingularMatrixError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Two values from different form-ring contexts were combined.
class ContextMismatchError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// Ring-spec text problem, with 1-based position.
class SpecParseError : public std::runtime_error {
public:
  SpecParseError(const std::string& what, int line, int col)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(col) + ": " + what),
        line_(line),
        col_(col) {}
  int line() const noexcept { return line_; }
  int col() const noexcept { return col_; }

private:
  int line_;
  int col_;
};

}  // namespace hu
