#pragma once

#include <stdexcept>
#include <string>

namespace rlab {

// Input outside the domain where an operation is defined (strip conditions,
// balancing, arity mismatch). Maps to CLI exit code 2.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// A factor hit a pole or an indeterminate zero/pole collision.
class SingularValueError : public std::runtime_error {
 public:
  SingularValueError(const std::string& what, int m = -1, int k = -1)
      : std::runtime_error(what), m_(m), k_(k) {}
  int m() const { return m_; }
  int k() const { return k_; }

 private:
  int m_;
  int k_;
};

// Quadrature or series did not reach the requested tolerance. Exit code 1.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedDimensionError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

}  // namespace rlab
