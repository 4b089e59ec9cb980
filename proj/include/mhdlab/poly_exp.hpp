#pragma once

#include <vector>

namespace mhdlab {

/// p(y) e^{-lambda y} with p a polynomial; closed under d_y and antiderivatives,
/// which makes it the building block of manufactured and test functions.
class PolyExp {
 public:
  PolyExp() = default;
  /// coeffs[k] multiplies y^k. lambda must be > 0 for antiderivative().
  PolyExp(std::vector<double> coeffs, double lambda);

  double eval(double y, int derivative = 0) const;
  PolyExp derivative() const;
  /// int_0^y of this function (an exponential part plus a constant).
  double integral(double y) const;
  /// Limit of integral(y) as y -> infinity.
  double integral_to_infinity() const;

  const std::vector<double>& coeffs() const { return coeffs_; }
  double lambda() const { return lambda_; }

 private:
  std::vector<double> coeffs_;
  double lambda_ = 1.0;
  /// q with (q e^{-lambda y})' = p e^{-lambda y}
  std::vector<double> anti_;
};

}  // namespace mhdlab
