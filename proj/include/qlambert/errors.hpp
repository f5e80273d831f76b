#pragma once

#include <stdexcept>
#include <string>

namespace qlambert {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Ill-formed input: zero denominators, negative radicands, bad grammar.
class MalformedInput : public Error {
public:
  using Error::Error;
};

/// Text that does not match the exact-number grammar.
class ParseError : public MalformedInput {
public:
  using MalformedInput::MalformedInput;
};

/// Operands from two different quadratic fields Q(sqrt(d1)), Q(sqrt(d2)).
class UnsupportedField : public Error {
public:
  using Error::Error;
};

/// An operation that is not defined for the operand kind (e.g. arithmetic on e or pi).
class UnsupportedOperand : public Error {
public:
  using Error::Error;
};

class DivisionByZero : public Error {
public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Lower branch requested where W_q has no finite branch point.
class NoSuchBranch : public DomainError {
public:
  using DomainError::DomainError;
};

/// dW_q/dz evaluated at the branch point, where the tangent is vertical.
class DerivativeSingular : public DomainError {
public:
  using DomainError::DomainError;
};

/// The root solver ran out of iterations. Carries the best iterate found.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, double best_w, double residual, int iterations)
      : Error(what), best_w_(best_w), residual_(residual), iterations_(iterations) {}

  double best_w() const noexcept { return best_w_; }
  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

private:
  double best_w_;
  double residual_;
  int iterations_;
};

/// Invalid tuning parameters (scan bounds, step counts, tolerances).
class ConfigError : public Error {
public:
  using Error::Error;
};

}  // namespace qlambert
