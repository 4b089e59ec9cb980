#pragma once

#include <array>
#include <vector>

#include "mhdlab/grid.hpp"
#include "mhdlab/outer_flow.hpp"

namespace mhdlab {

/// Viscosity, conductivity, resistivity and heat capacity. One instance is
/// shared (through SolverConfig) by source terms and the solver.
struct PhysicalConstants {
  double mu = 1.0;
  double kappa = 1.0;
  double nu = 1.0;
  double c_v = 1.0;
};

/// Layer unknowns in physical variables.
struct PhysicalState {
  Field u1, u2, theta_phys, h1, h2;
};

/// Homogenized unknowns. (u, theta, h) are prognostic; (v, g) are always
/// reconstructed from the divergence constraints.
struct HomogeneousState {
  Field u, theta, h;
  Field v, g;

  /// Builds the state with v = -inv_dy(ddx u), g = -inv_dy(ddx h).
  static HomogeneousState from_prognostic(Field u, Field theta, Field h);
  static HomogeneousState zero(const Grid& grid);
  const Grid& grid() const { return u.grid(); }
};

/// phi and its first three derivatives sampled on the grid rows.
struct PhiProfile {
  std::vector<double> phi, d1, d2, d3;
  PhiProfile(const CutoffPhi& cutoff, const Grid& grid);
};

/// Trace values per x column at a fixed time.
std::vector<FlowPoint> flow_slice(const OuterFlow& flow, const Grid& grid, double t);

HomogeneousState to_homogeneous(const PhysicalState& p, const OuterFlow& flow, const CutoffPhi& phi, double t);
PhysicalState from_homogeneous(const HomogeneousState& s, const OuterFlow& flow, const CutoffPhi& phi, double t);

struct VG {
  Field v, g;
};
VG reconstruct_vg(const Field& u, const Field& h);

struct SourcePoint {
  double r1 = 0, r2 = 0, r3 = 0, r4 = 0;
};

/// Closed-form sources of the homogenized system at one node, given the traces
/// and (phi, phi', phi'', phi''').
SourcePoint source_point(const FlowPoint& f, const std::array<double, 4>& phi, const PhysicalConstants& pc);

struct SourceTerms {
  Field r1, r2, r3, r4;
};
SourceTerms source_terms(const OuterFlow& flow, const CutoffPhi& phi, const PhysicalConstants& pc,
                         const Grid& grid, double t);

}  // namespace mhdlab
