#pragma once

#include <functional>
#include <span>
#include <vector>

#include "mhdlab/grid.hpp"

namespace mhdlab {

/// Weight <y> = 1 + y.
inline double bracket(double y) { return 1.0 + y; }

/// (int int <y>^{2l} |f|^2 dx dy)^{1/2}: rectangle rule in x, trapezoid in y.
double weighted_l2_norm(const Field& f, double l);

struct NormWithTail {
  double norm = 0.0;
  /// <y_max>^{2l} times the L2(T_x) norm of the top row; a truncation indicator.
  double tail = 0.0;
};
NormWithTail weighted_l2_norm_with_tail(const Field& f, double l);

/// sqrt(sum_k ||f_k||^2_{L^2_l}) for a tuple of fields.
double weighted_l2_norm(std::span<const Field> fields, double l);

/// max over nodes of <y>^p |f|.
double weighted_sup(const Field& f, double p);

struct WeightedNormSpec {
  int m = 0;
  double l = 0.0;
  /// Highest time-derivative order in the multi-index sum (0 or 1).
  int include_time_derivatives = 0;
};

/// Supplies d_t of each state field, obtained from the evolution equations.
using TimeDerivativeProvider = std::function<std::vector<Field>(std::span<const Field>)>;

/// sqrt of sum over fields and alpha = (b1, b2, k), |alpha| <= m, b1 <= spec.include_time_derivatives,
/// of ||<y>^{k+l} d_t^b1 d_x^b2 d_y^k f||^2. Throws std::invalid_argument for m > 3, l < 0,
/// or time derivatives requested without a provider.
double weighted_sobolev_norm(std::span<const Field> fields, const WeightedNormSpec& spec,
                             const TimeDerivativeProvider& provider = {});

}  // namespace mhdlab
