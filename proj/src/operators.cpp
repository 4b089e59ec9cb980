#include "mhdlab/operators.hpp"

#include <stdexcept>

namespace mhdlab {

Field ddx(const Field& f, int order) {
  if (order != 1 && order != 2) throw std::invalid_argument("ddx: order must be 1 or 2");
  const Grid& g = f.grid();
  const int nx = g.n_x;
  const int ny = g.n_y;
  const double dx = g.dx();
  Field out(g);
  for (int i = 0; i < nx; ++i) {
    const auto m2 = f.column((i - 2 + nx) % nx);
    const auto m1 = f.column((i - 1 + nx) % nx);
    const auto c0 = f.column(i);
    const auto p1 = f.column((i + 1) % nx);
    const auto p2 = f.column((i + 2) % nx);
    auto o = out.column(i);
    if (order == 1) {
      const double s = 1.0 / (12.0 * dx);
      for (int j = 0; j < ny; ++j) o[j] = s * (8.0 * (p1[j] - m1[j]) - (p2[j] - m2[j]));
    } else {
      const double s = 1.0 / (12.0 * dx * dx);
      for (int j = 0; j < ny; ++j) o[j] = s * (16.0 * ((p1[j] - c0[j]) + (m1[j] - c0[j])) - ((p2[j] - c0[j]) + (m2[j] - c0[j])));
    }
  }
  return out;
}

Field ddy(const Field& f, int order) {
  if (order != 1 && order != 2) throw std::invalid_argument("ddy: order must be 1 or 2");
  const Grid& g = f.grid();
  const int ny = g.n_y;
  if (ny < 5) throw std::invalid_argument("ddy: need n_y >= 5");
  const double dy = g.dy();
  Field out(g);
  for (int i = 0; i < g.n_x; ++i) {
    const auto c = f.column(i);
    auto o = out.column(i);
    const int n = ny - 1;
    if (order == 1) {
      const double s = 1.0 / (2.0 * dy);
      o[0] = s * (-3.0 * c[0] + 4.0 * c[1] - c[2]);
      for (int j = 1; j < n; ++j) o[j] = s * (c[j + 1] - c[j - 1]);
      o[n] = s * (3.0 * c[n] - 4.0 * c[n - 1] + c[n - 2]);
    } else {
      const double s = 1.0 / (dy * dy);
      o[0] = s * (2.0 * c[0] - 5.0 * c[1] + 4.0 * c[2] - c[3]);
      for (int j = 1; j < n; ++j) o[j] = s * (c[j + 1] - 2.0 * c[j] + c[j - 1]);
      o[n] = s * (2.0 * c[n] - 5.0 * c[n - 1] + 4.0 * c[n - 2] - c[n - 3]);
    }
  }
  return out;
}

Field inv_dy(const Field& f) {
  const Grid& g = f.grid();
  const double half = 0.5 * g.dy();
  Field out(g);
  for (int i = 0; i < g.n_x; ++i) {
    const auto c = f.column(i);
    auto o = out.column(i);
    o[0] = 0.0;
    for (int j = 1; j < g.n_y; ++j) o[j] = o[j - 1] + half * (c[j - 1] + c[j]);
  }
  return out;
}

namespace {

Field apply_x(const Field& f, int bx) {
  switch (bx) {
    case 0: return f;
    case 1: return ddx(f, 1);
    case 2: return ddx(f, 2);
    case 3: return ddx(ddx(f, 2), 1);
    default: throw std::invalid_argument("mixed_derivative: x order > 3");
  }
}

Field apply_y(const Field& f, int by) {
  switch (by) {
    case 0: return f;
    case 1: return ddy(f, 1);
    case 2: return ddy(f, 2);
    case 3: return ddy(ddy(f, 2), 1);
    default: throw std::invalid_argument("mixed_derivative: y order > 3");
  }
}

}  // namespace

Field mixed_derivative(const Field& f, int bx, int by) { return apply_y(apply_x(f, bx), by); }

}  // namespace mhdlab
