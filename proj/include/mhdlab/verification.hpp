#pragma once

#include <string>
#include <vector>

#include "mhdlab/diagnostics.hpp"
#include "mhdlab/presets.hpp"
#include "mhdlab/run.hpp"

namespace mhdlab {

struct EpsilonRow {
  double epsilon = 0.0;
  /// monitored H^m_l norm at the final time
  double norm = 0.0;
  /// L2 distance of the final state to the next (smaller) epsilon; 0 on the last row
  double difference = 0.0;
  std::string status;
};

struct EpsilonStudyReport {
  std::vector<EpsilonRow> rows;
  /// differences non-increasing down the list
  bool monotone = false;
  /// (max - min) / max of the final norms
  double norm_variation = 0.0;
  bool completed = false;
};

/// Runs the scenario once per epsilon (descending, at least 3) with its correctors
/// and compares the final states.
EpsilonStudyReport epsilon_study(const Scenario& base, const std::vector<double>& epsilons);

/// Transformed differences of two solutions, built with the second one's coefficients:
/// u_bar = (u_a - u_b) - eta4 psi~, and likewise for theta and h, where psi~ = inv_dy(h_a - h_b)
/// and eta4..eta6 are the eta coefficients of solution b.
struct DifferenceState {
  Field u_bar, theta_bar, h_bar, psi_tilde;
  /// psi~ recovered from h_bar as (h_b + H phi') inv_dy(h_bar / (h_b + H phi'))
  Field psi_rebuilt;
};

DifferenceState difference_state(const HomogeneousState& a, const HomogeneousState& b, const OuterFlow& flow,
                                 const CutoffPhi& phi, const SolverConfig& cfg, double t);

/// ||(u_bar, theta_bar, h_bar)||^2 in L2.
double difference_energy(const DifferenceState& d);

struct UniquenessOptions {
  /// physical time between energy samples
  double record_interval = 0.01;
};

struct UniquenessReport {
  std::vector<double> t;
  std::vector<double> energy;
  /// max over t > 0 of log(E(t)/E(0)) / t; NaN when E(0) = 0
  double c_fit = 0.0;
  double sup_energy = 0.0;
  /// max over samples of |psi_rebuilt - psi~|_inf / max(|psi~|_inf, tiny)
  double psi_rebuild_error = 0.0;
  /// |d_y h_bar| at the wall relative to |h_bar|_inf, worst over samples
  double wall_neumann_residual = 0.0;
  std::string status = "completed";
  std::string message;
  bool completed() const { return status == "completed"; }
};

/// Evolves both initial data in lockstep with identical configs. Throws
/// HypothesisViolation if either fails the initial checks.
UniquenessReport uniqueness_contraction(const HomogeneousState& s0a, const HomogeneousState& s0b,
                                        const OuterFlow& flow, const CutoffPhi& phi, const SolverConfig& cfg,
                                        const UniquenessOptions& options = {});

/// delta cos x (1 + y) e^{-y} (1 - (y/y_max)^2) added to h; keeps every boundary condition.
HomogeneousState perturb_magnetic_field(const HomogeneousState& s, double delta);

}  // namespace mhdlab
