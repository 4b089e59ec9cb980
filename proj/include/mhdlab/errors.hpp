#pragma once

#include <stdexcept>
#include <string>

namespace mhdlab {

/// Base for invariant failures raised by the solver and the monitors.
class SolverError : public std::runtime_error {
 public:
  SolverError(std::string reason, const std::string& what) : std::runtime_error(what), reason_(std::move(reason)) {}
  /// Short machine-readable tag, e.g. "magnetic_floor".
  const std::string& reason() const { return reason_; }

 private:
  std::string reason_;
};

class DegenerateViscosity : public SolverError {
 public:
  explicit DegenerateViscosity(const std::string& w) : SolverError("degenerate_viscosity", w) {}
};

class NonFiniteField : public SolverError {
 public:
  explicit NonFiniteField(const std::string& w) : SolverError("non_finite", w) {}
};

class TridiagonalFailure : public SolverError {
 public:
  TridiagonalFailure(const std::string& w, int column) : SolverError("tridiagonal_failure", w), column_(column) {}
  int column() const { return column_; }

 private:
  int column_;
};

class CFLViolation : public SolverError {
 public:
  explicit CFLViolation(const std::string& w) : SolverError("cfl_violation", w) {}
};

class MagneticFloorBreach : public SolverError {
 public:
  MagneticFloorBreach(const std::string& w, double x, double y, double value)
      : SolverError("magnetic_floor", w), x_(x), y_(y), value_(value) {}
  double x() const { return x_; }
  double y() const { return y_; }
  double value() const { return value_; }

 private:
  double x_, y_, value_;
};

/// Initial data rejected before stepping.
class HypothesisViolation : public SolverError {
 public:
  explicit HypothesisViolation(const std::string& w) : SolverError("hypothesis", w) {}
};

}  // namespace mhdlab
