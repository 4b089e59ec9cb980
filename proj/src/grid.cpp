#include "mhdlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mhdlab {

Grid Grid::make(int n_x, int n_y, double y_max, double r0) {
  if (n_x < 8 || n_x % 2 != 0)
    throw std::invalid_argument("grid: n_x must be even and >= 8 (got " + std::to_string(n_x) + ")");
  if (n_y < 16) throw std::invalid_argument("grid: n_y must be >= 16 (got " + std::to_string(n_y) + ")");
  if (!(r0 > 0.0)) throw std::invalid_argument("grid: r0 must be positive");
  if (!(y_max >= 4.0 * r0)) throw std::invalid_argument("grid: y_max must be >= 4*r0");
  return Grid{n_x, n_y, y_max};
}

double Grid::dx() const { return 2.0 * std::numbers::pi / n_x; }
double Grid::dy() const { return y_max / (n_y - 1); }

Field::Field(const Grid& grid, double value) : grid_(grid), values_(grid.size(), value) {}

bool Field::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double Field::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double Field::min() const {
  return values_.empty() ? 0.0 : *std::min_element(values_.begin(), values_.end());
}

void require_same_grid(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("field: grid mismatch");
}

Field& Field::operator+=(const Field& other) {
  require_same_grid(*this, other);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_same_grid(*this, other);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
  return *this;
}

Field& Field::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

Field& Field::axpy(double s, const Field& other) {
  require_same_grid(*this, other);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += s * other.values_[k];
  return *this;
}

Field hadamard(const Field& a, const Field& b) {
  require_same_grid(a, b);
  Field out(a.grid());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] * b[k];
  return out;
}

}  // namespace mhdlab
