#pragma once

#include <array>
#include <functional>
#include <vector>

#include "mhdlab/errors.hpp"
#include "mhdlab/grid.hpp"
#include "mhdlab/homogenize.hpp"
#include "mhdlab/outer_flow.hpp"

namespace mhdlab {

struct SolverConfig {
  PhysicalConstants physics;
  double epsilon = 0.0;
  double delta0 = 0.1;
  double dt = 1e-3;
  double t_end = 0.1;
  /// Number of Taylor terms kept in the correctors, 0..2.
  int corrector_order = 1;
  int monitor_every = 10;

  /// Weight exponent l of the monitored norms and of the sup-norm hypotheses.
  double weight_l = 0.0;
  /// Sobolev order of the monitored norm.
  int norm_m = 2;
  /// Tangential multi-index (time order, x order) used by the equivalence monitor.
  std::array<int, 2> monitor_beta{0, 1};

  double cfl = 0.5;
  /// Tolerated undershoot of theta + Theta phi' before the run aborts.
  double temperature_tolerance = 1e-8;
  /// Abort when any prognostic field exceeds this in absolute value.
  double blowup_threshold = 1e6;
  /// Enforce h + H phi' >= 2 delta0 at t = 0 and >= delta0 during the run.
  bool check_magnetic_floor = true;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
  /// c0 = min(mu, kappa, nu).
  double c0() const;
};

/// Instantaneous time derivatives of the prognostic fields.
struct Tendency {
  Field du, dtheta, dh;

  static Tendency zero(const Grid& grid);
  Tendency& axpy(double s, const Tendency& other);
};

/// Taylor data of the correctors: entry i holds d_x^2 d_t^i of (u, theta, h) at t = 0,
/// and rt4[i] is inv_dy of d_x^2 d_t^i h.
struct CorrectorSet {
  std::vector<Field> rt1, rt2, rt3, rt4;

  int order() const { return static_cast<int>(rt1.size()) - 1; }
  bool empty() const { return rt1.empty(); }

  struct Values {
    Field r1, r2, r3, r4;
  };
  /// -sum_i t^i/i! stored[i]
  Values at(double t) const;
};

/// Extra forcing added to the tendency, e.g. manufactured-solution residuals.
using Forcing = std::function<Tendency(double t)>;

/// Local values needed by the pointwise right-hand side. visc_u is the full
/// mu d_y[(theta + Theta phi' + 1) d_y u]; the remaining entries are plain derivatives.
struct NodeValues {
  double u = 0, u_x = 0, u_y = 0, u_xx = 0;
  double theta = 0, theta_x = 0, theta_y = 0, theta_xx = 0, theta_yy = 0;
  double h = 0, h_x = 0, h_y = 0, h_xx = 0, h_yy = 0;
  double v = 0, g = 0;
  double visc_u = 0;
};

struct NodeTendency {
  double du = 0, dtheta = 0, dh = 0;
};

/// The regularized homogenized system at one node. corr holds the corrector
/// values (r~1, r~2, r~3) which are multiplied by epsilon here.
NodeTendency rhs_point(const NodeValues& n, const FlowPoint& f, const std::array<double, 4>& phi,
                       const PhysicalConstants& pc, double epsilon, const std::array<double, 3>& corr);

/// Semi-discrete right-hand side on the grid. Boundary rows are zero where a
/// Dirichlet condition holds. Throws DegenerateViscosity or NonFiniteField.
Tendency rhs_regularized(const HomogeneousState& s, const OuterFlow& flow, const CutoffPhi& phi,
                         const SolverConfig& cfg, const CorrectorSet& correctors, double t);

/// Imposes u = theta = 0 at both ends of each column, h = 0 at the top and
/// rebuilds (v, g).
HomogeneousState apply_boundary_conditions(HomogeneousState s);

/// Explicit stability number; step() rejects values above cfg.cfl.
double cfl_number(const HomogeneousState& s, const OuterFlow& flow, const CutoffPhi& phi, const SolverConfig& cfg,
                  double t);

/// One linearly implicit Euler step: the y-diffusion of (u, theta, h) is implicit
/// with coefficients frozen at s, everything else explicit.
HomogeneousState step(const HomogeneousState& s, const OuterFlow& flow, const CutoffPhi& phi,
                      const SolverConfig& cfg, const CorrectorSet& correctors, double t,
                      const Forcing& forcing = {});

/// d_t^i (u, theta, h) at t = 0 for i = 0..order, from the unregularized system.
/// Order 2 is a centered difference of the right-hand side along +-dt/16 Euler
/// steps and is therefore approximate.
std::vector<Tendency> time_derivatives_at_zero(const HomogeneousState& s0, const OuterFlow& flow,
                                               const CutoffPhi& phi, const SolverConfig& cfg, int order);

CorrectorSet build_correctors(const HomogeneousState& s0, const OuterFlow& flow, const CutoffPhi& phi,
                              const SolverConfig& cfg);

}  // namespace mhdlab
