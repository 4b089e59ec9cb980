#include "mhdlab/poly_exp.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace mhdlab {

namespace {

double horner(const std::vector<double>& c, double y) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * y + *it;
  return acc;
}

}  // namespace

PolyExp::PolyExp(std::vector<double> coeffs, double lambda) : coeffs_(std::move(coeffs)), lambda_(lambda) {
  if (!(lambda_ > 0.0)) throw std::invalid_argument("PolyExp: lambda must be positive");
  // (q e^{-ly})' = (q' - l q) e^{-ly} = p e^{-ly}: solve from the top degree down
  const int n = static_cast<int>(coeffs_.size());
  anti_.assign(coeffs_.size(), 0.0);
  for (int k = n - 1; k >= 0; --k) {
    const double next = (k + 1 < n) ? (k + 1) * anti_[k + 1] : 0.0;
    anti_[k] = (next - coeffs_[k]) / lambda_;
  }
}

PolyExp PolyExp::derivative() const {
  // (p e^{-ly})' = (p' - l p) e^{-ly}
  std::vector<double> d(coeffs_.size(), 0.0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    d[k] -= lambda_ * coeffs_[k];
    if (k > 0) d[k - 1] += static_cast<double>(k) * coeffs_[k];
  }
  return PolyExp(std::move(d), lambda_);
}

double PolyExp::eval(double y, int derivative_order) const {
  if (derivative_order == 0) return horner(coeffs_, y) * std::exp(-lambda_ * y);
  return derivative().eval(y, derivative_order - 1);
}

double PolyExp::integral(double y) const {
  const double q0 = anti_.empty() ? 0.0 : anti_[0];
  return horner(anti_, y) * std::exp(-lambda_ * y) - q0;
}

double PolyExp::integral_to_infinity() const { return anti_.empty() ? 0.0 : -anti_[0]; }

}  // namespace mhdlab
