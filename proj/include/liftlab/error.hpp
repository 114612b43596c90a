#pragma once

#include <stdexcept>
#include <string>

namespace liftlab {

// Base of every error the library raises. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad shapes, non-finite entries, unparsable JSON.
class InputError : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public InputError {
 public:
  using InputError::InputError;
};

class NonSquare : public InputError {
 public:
  using InputError::InputError;
};

class ParseError : public InputError {
 public:
  using InputError::InputError;
};

class UnknownClass : public InputError {
 public:
  using InputError::InputError;
};

class WrongKind : public InputError {
 public:
  using InputError::InputError;
};

// A mathematical precondition of an operation does not hold.
class HypothesesFailed : public Error {
 public:
  HypothesesFailed(const std::string& condition, const std::string& what)
      : Error(what), condition_(condition) {}
  const std::string& condition() const { return condition_; }

 private:
  std::string condition_;
};

class NotHermitian : public HypothesesFailed {
 public:
  explicit NotHermitian(const std::string& what) : HypothesesFailed("M = M*", what) {}
};

class NotPsd : public HypothesesFailed {
 public:
  explicit NotPsd(const std::string& what) : HypothesesFailed("M >= 0", what) {}
};

class NotInvertible : public HypothesesFailed {
 public:
  explicit NotInvertible(const std::string& what)
      : HypothesesFailed("A boundedly invertible", what) {}
};

class RangeNotIncluded : public HypothesesFailed {
 public:
  explicit RangeNotIncluded(const std::string& what)
      : HypothesesFailed("R(C*) in R(B*)", what) {}
};

class NotQuasicontraction : public HypothesesFailed {
 public:
  explicit NotQuasicontraction(const std::string& what)
      : HypothesesFailed("T*^2 T^2 <= T*T", what) {}
};

class NotQuasiIsometry : public HypothesesFailed {
 public:
  explicit NotQuasiIsometry(const std::string& what)
      : HypothesesFailed("T*^2 T^2 = T*T", what) {}
};

class KernelConditionFailed : public HypothesesFailed {
 public:
  explicit KernelConditionFailed(const std::string& what)
      : HypothesesFailed("Q*Q N(Q*) in N(Q*)", what) {}
};

class Degenerate : public HypothesesFailed {
 public:
  explicit Degenerate(const std::string& what) : HypothesesFailed("T0 != 0", what) {}
};

// The operation needs finite support (or identity plus finite support) and did not get it.
class Unsupported : public Error {
 public:
  using Error::Error;
};

// Rejection sampling ran out of budget.
class Exhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace liftlab
