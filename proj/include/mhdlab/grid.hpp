#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mhdlab {

/// Truncated periodic strip T_x x [0, y_max]. Nodes are x_i = i*dx for
/// i < n_x (periodic) and y_j = j*dy for j < n_y, so y_0 = 0 and
/// y_{n_y-1} = y_max both lie on the grid.
struct Grid {
  int n_x = 0;
  int n_y = 0;
  double y_max = 0.0;

  /// Validates n_x >= 8 and even, n_y >= 16, y_max >= 4*r0.
  static Grid make(int n_x, int n_y, double y_max, double r0);

  double dx() const;
  double dy() const;
  double x(int i) const { return i * dx(); }
  double y(int j) const { return j * dy(); }
  std::size_t size() const { return static_cast<std::size_t>(n_x) * static_cast<std::size_t>(n_y); }

  friend bool operator==(const Grid&, const Grid&) = default;
};

/// Nodal values on a Grid, row-major in x then y: index = i*n_y + j.
class Field {
 public:
  Field() = default;
  explicit Field(const Grid& grid, double value = 0.0);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  double& operator()(int i, int j) { return values_[index(i, j)]; }
  double operator()(int i, int j) const { return values_[index(i, j)]; }
  double& operator[](std::size_t k) { return values_[k]; }
  double operator[](std::size_t k) const { return values_[k]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  /// Contiguous y-column at x index i.
  std::span<double> column(int i) { return {values_.data() + index(i, 0), static_cast<std::size_t>(grid_.n_y)}; }
  std::span<const double> column(int i) const { return {values_.data() + index(i, 0), static_cast<std::size_t>(grid_.n_y)}; }

  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(grid_.n_y) + static_cast<std::size_t>(j);
  }

  bool all_finite() const;
  double max_abs() const;
  double min() const;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double s);
  /// this += s * other
  Field& axpy(double s, const Field& other);

  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(double s, Field a) { return a *= s; }

  /// Builds a field by sampling f(x, y) at every node.
  template <class F>
  static Field sample(const Grid& grid, F&& f) {
    Field out(grid);
    for (int i = 0; i < grid.n_x; ++i)
      for (int j = 0; j < grid.n_y; ++j) out(i, j) = f(grid.x(i), grid.y(j));
    return out;
  }

 private:
  Grid grid_{};
  std::vector<double> values_;
};

Field hadamard(const Field& a, const Field& b);

/// Throws std::invalid_argument when the two fields live on different grids.
void require_same_grid(const Field& a, const Field& b);

}  // namespace mhdlab
