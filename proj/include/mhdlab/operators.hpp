#pragma once

#include "mhdlab/grid.hpp"

namespace mhdlab {

/// Periodic 4th-order centered x-derivative, order 1 or 2. Truncation error
/// is O(dx^4) for smooth periodic data.
Field ddx(const Field& f, int order = 1);

/// y-derivative, order 1 or 2: 2nd-order centered in the interior with
/// 2nd-order one-sided closures at y = 0 and y = y_max. Requires n_y >= 5.
Field ddy(const Field& f, int order = 1);

/// Cumulative trapezoidal antiderivative along y, zero at y = 0.
Field inv_dy(const Field& f);

/// Composite derivative d_x^bx d_y^by built from ddx/ddy. bx, by <= 3.
Field mixed_derivative(const Field& f, int bx, int by);

}  // namespace mhdlab
