#pragma once

#include <string>
#include <vector>

#include "mhdlab/homogenize.hpp"
#include "mhdlab/poly_exp.hpp"
#include "mhdlab/solver.hpp"

namespace mhdlab {

/// a + b cos x + c sin x
struct Trig {
  double a = 0.0, b = 0.0, c = 0.0;
  double eval(double x, int derivative = 0) const;
};

/// Separable manufactured state f*(t, x, y) = T(t) X_f(x) Y_f(y) for f = u, theta, h,
/// with T(t) = 1 + amplitude sin(frequency t). Every profile vanishes where the
/// boundary data require it, including d_y h* = 0 at the wall.
struct ManufacturedSolution {
  Trig xu, xtheta, xh;
  PolyExp yu, ytheta, yh;
  double time_amplitude = 0.0;
  double time_frequency = 2.0;

  /// u* = 0.5 sin x (y - y^2/Y) e^{-y}, theta* = 0.3(1 + 0.5 cos x) y^2 (1 - y/Y) e^{-y},
  /// h* = 0.4 cos x (1 + y)(1 - y^2/Y^2) e^{-y}; T = 1 + 0.3 sin 2t when unsteady.
  static ManufacturedSolution standard(double y_max, bool unsteady);

  double time_factor(double t, int derivative = 0) const;
  HomogeneousState sample(const Grid& grid, double t) const;

  /// d_t s* minus the pointwise right-hand side evaluated on the exact profiles.
  /// Forcing the solver with this leaves only the spatial and temporal truncation error.
  Tendency analytic_forcing(const Grid& grid, const OuterFlow& flow, const CutoffPhi& phi,
                            const SolverConfig& cfg, double t) const;
  /// d_t s* minus the discrete right-hand side of the sampled s*; the sampled
  /// profiles then solve the semi-discrete system exactly.
  Tendency discrete_forcing(const Grid& grid, const OuterFlow& flow, const CutoffPhi& phi,
                            const SolverConfig& cfg, double t) const;
};

struct MmsSpec {
  OuterFlow flow;
  double r0 = 1.0;
  double y_max = 6.0;
  /// epsilon, dt, t_end and physics; correctors are not used.
  SolverConfig cfg;

  int n_x = 64;
  std::vector<int> n_y_ladder{61, 121, 241};
  /// x refinement runs at this n_y and is measured by successive differences.
  int n_y_for_x = 121;
  std::vector<int> n_x_ladder{16, 32, 64};
  int n_x_for_t = 16;
  int n_y_for_t = 61;
  std::vector<double> dt_ladder{0.01, 0.005, 0.0025};
  double t_end_for_t = 1.0;

  static MmsSpec standard();
};

struct ConvergenceLevel {
  double parameter = 0.0;
  double error = 0.0;
  /// log(e_prev / e) / log(p_prev / p); NaN on the first level
  double order = 0.0;
};

struct MmsReport {
  std::vector<ConvergenceLevel> dy, dx, dt;
  /// Largest deviation of the error from its value at the first monitor time in the
  /// steady dy runs, relative to the error; small means a t-independent floor.
  double steady_drift = 0.0;
  std::string failure;
};

/// Fills ConvergenceLevel::order for successive levels.
void fill_orders(std::vector<ConvergenceLevel>& levels);

MmsReport mms_convergence(const MmsSpec& spec);

}  // namespace mhdlab
