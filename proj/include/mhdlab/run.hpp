#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mhdlab/diagnostics.hpp"
#include "mhdlab/solver.hpp"

namespace mhdlab {

struct HypothesisReport {
  double min_theta_phys = 0.0;
  double min_h_total = 0.0;
  SupBounds sup;
  bool theta_ok = false, floor_ok = false, sup_ok = false;
  bool ok() const { return theta_ok && floor_ok && sup_ok; }
  std::string describe() const;
};

/// Checks the initial data: theta0 + Theta phi' >= 0, h0 + H phi' >= 2 delta0
/// (skipped when cfg.check_magnetic_floor is false), and the weighted sup bounds
/// of d_y and d_y^2 against (2 delta0)^{-1}.
HypothesisReport check_initial_hypotheses(const HomogeneousState& s0, const OuterFlow& flow, const CutoffPhi& phi,
                                          const SolverConfig& cfg);

struct RunOptions {
  using Observer = std::function<void(int step, double t, const HomogeneousState&)>;

  Forcing forcing;
  /// Called after every accepted step with the new time and state.
  Observer observer;
  bool check_hypotheses = true;
  bool use_correctors = true;
  /// Emit MonitorReports; the cheap abort checks run every step regardless.
  bool monitors = true;
};

struct RunResult {
  HomogeneousState final_state;
  double t_final = 0.0;
  int steps = 0;
  std::vector<MonitorReport> history;
  /// "completed" or the tag of the invariant that stopped the run.
  std::string status = "completed";
  std::string message;
  /// Time of the last state that satisfied every invariant.
  double last_good_t = 0.0;

  bool completed() const { return status == "completed"; }
};

/// Advances s0 to cfg.t_end with fixed steps t_n = n dt. Invariant failures end
/// the run with their reason recorded. A rejected initial state throws
/// HypothesisViolation.
RunResult run(const HomogeneousState& s0, const OuterFlow& flow, const CutoffPhi& phi, const SolverConfig& cfg,
              const RunOptions& options = {});

}  // namespace mhdlab
