#include "mhdlab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mhdlab/operators.hpp"

namespace mhdlab {

namespace {

double weighted_l2_squared(const Field& f, double l) {
  const Grid& g = f.grid();
  const double dy = g.dy();
  std::vector<double> w(g.n_y);
  for (int j = 0; j < g.n_y; ++j) {
    const double trap = (j == 0 || j == g.n_y - 1) ? 0.5 : 1.0;
    w[j] = trap * dy * std::pow(bracket(g.y(j)), 2.0 * l);
  }
  double sum = 0.0;
  for (int i = 0; i < g.n_x; ++i) {
    const auto c = f.column(i);
    for (int j = 0; j < g.n_y; ++j) sum += w[j] * c[j] * c[j];
  }
  return sum * g.dx();
}

}  // namespace

double weighted_l2_norm(const Field& f, double l) {
  if (l < 0.0) throw std::invalid_argument("weighted_l2_norm: l must be >= 0");
  return std::sqrt(weighted_l2_squared(f, l));
}

NormWithTail weighted_l2_norm_with_tail(const Field& f, double l) {
  const Grid& g = f.grid();
  double top = 0.0;
  for (int i = 0; i < g.n_x; ++i) top += f(i, g.n_y - 1) * f(i, g.n_y - 1);
  return {weighted_l2_norm(f, l), std::pow(bracket(g.y_max), 2.0 * l) * std::sqrt(top * g.dx())};
}

double weighted_l2_norm(std::span<const Field> fields, double l) {
  if (l < 0.0) throw std::invalid_argument("weighted_l2_norm: l must be >= 0");
  double sum = 0.0;
  for (const Field& f : fields) sum += weighted_l2_squared(f, l);
  return std::sqrt(sum);
}

double weighted_sup(const Field& f, double p) {
  const Grid& g = f.grid();
  double m = 0.0;
  for (int j = 0; j < g.n_y; ++j) {
    const double w = std::pow(bracket(g.y(j)), p);
    for (int i = 0; i < g.n_x; ++i) m = std::max(m, w * std::abs(f(i, j)));
  }
  return m;
}

double weighted_sobolev_norm(std::span<const Field> fields, const WeightedNormSpec& spec,
                             const TimeDerivativeProvider& provider) {
  if (spec.m < 0 || spec.m > 3) throw std::invalid_argument("weighted_sobolev_norm: m must be in [0, 3]");
  if (spec.l < 0.0) throw std::invalid_argument("weighted_sobolev_norm: l must be >= 0");
  if (spec.include_time_derivatives < 0 || spec.include_time_derivatives > 1)
    throw std::invalid_argument("weighted_sobolev_norm: time-derivative order must be 0 or 1");
  const int max_t = std::min(spec.include_time_derivatives, spec.m);
  if (max_t > 0 && !provider)
    throw std::invalid_argument("weighted_sobolev_norm: time derivatives need a RHS provider");

  std::vector<Field> dt_fields;
  if (max_t > 0) {
    dt_fields = provider(fields);
    if (dt_fields.size() != fields.size())
      throw std::invalid_argument("weighted_sobolev_norm: provider returned wrong field count");
  }

  double sum = 0.0;
  for (int b1 = 0; b1 <= max_t; ++b1) {
    for (std::size_t n = 0; n < fields.size(); ++n) {
      const Field& base = b1 == 0 ? fields[n] : dt_fields[n];
      for (int b2 = 0; b1 + b2 <= spec.m; ++b2) {
        for (int k = 0; b1 + b2 + k <= spec.m; ++k) {
          sum += weighted_l2_squared(mixed_derivative(base, b2, k), spec.l + k);
        }
      }
    }
  }
  return std::sqrt(sum);
}

}  // namespace mhdlab
