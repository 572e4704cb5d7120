#pragma once

#include <stdexcept>
#include <string>

namespace wqed {

/// Base class for numerical failures that a caller may want to recover from
/// (e.g. by switching to the quadrature path).
class NumericsError : public std::runtime_error {
 public:
  explicit NumericsError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised when a scaled closed-form sum cancels so badly that the result has
/// fewer correct digits than the advertised contract.
class PrecisionLossError : public NumericsError {
 public:
  PrecisionLossError(const std::string& msg, double condition)
      : NumericsError(msg), condition_(condition) {}
  double condition() const { return condition_; }

 private:
  double condition_;
};

/// Raised when an adaptive integral cannot reach the requested tolerance.
class ToleranceError : public NumericsError {
 public:
  ToleranceError(const std::string& msg, double achieved)
      : NumericsError(msg), achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

/// Raised by the bidirectional steady-state solver on (near-)singular systems.
class SingularSystemError : public NumericsError {
 public:
  SingularSystemError(const std::string& msg, double condition_estimate)
      : NumericsError(msg), cond_(condition_estimate) {}
  double condition_estimate() const { return cond_; }

 private:
  double cond_;
};

}  // namespace wqed
