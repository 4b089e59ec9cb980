#include "mhdlab/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace mhdlab {

std::string HypothesisReport::describe() const {
  char buf[256];
  std::snprintf(buf, sizeof buf, "min(theta0 + Theta phi') = %.6g%s; min(h0 + H phi') = %.6g%s; sup bounds %.6g, %.6g%s",
                min_theta_phys, theta_ok ? "" : " (negative)", min_h_total, floor_ok ? "" : " (below 2 delta0)", sup.dy1,
                sup.dy2, sup_ok ? "" : " (above 1/(2 delta0))");
  return buf;
}

HypothesisReport check_initial_hypotheses(const HomogeneousState& s0, const OuterFlow& flow, const CutoffPhi& phi,
                                          const SolverConfig& cfg) {
  HypothesisReport r;
  r.min_theta_phys = temperature_total(s0, flow, phi, 0.0).min();
  r.min_h_total = magnetic_total(s0, flow, phi, 0.0).min();
  r.sup = sup_bounds(s0, cfg.weight_l);
  r.theta_ok = r.min_theta_phys >= -1e-12;
  r.floor_ok = !cfg.check_magnetic_floor || r.min_h_total >= 2.0 * cfg.delta0;
  const double cap = 1.0 / (2.0 * cfg.delta0);
  r.sup_ok = r.sup.dy1 <= cap && r.sup.dy2 <= cap;
  return r;
}

namespace {

/// Cheap per-step invariants; returns an empty string when all hold.
std::string invariant_failure(const HomogeneousState& s, const OuterFlow& flow, const CutoffPhi& phi,
                              const SolverConfig& cfg, double t, std::string& message) {
  const double big = std::max({s.u.max_abs(), s.theta.max_abs(), s.h.max_abs()});
  char buf[160];
  if (!(big <= cfg.blowup_threshold)) {
    std::snprintf(buf, sizeof buf, "max |(u, theta, h)| = %.6g exceeds %.6g at t = %.6g", big, cfg.blowup_threshold, t);
    message = buf;
    return "norm_blowup";
  }
  if (cfg.check_magnetic_floor) {
    const double m = magnetic_total(s, flow, phi, t).min();
    if (m < cfg.delta0) {
      std::snprintf(buf, sizeof buf, "min(h + H phi') = %.6g below delta0 = %.6g at t = %.6g", m, cfg.delta0, t);
      message = buf;
      return "magnetic_floor";
    }
  }
  const double th = temperature_total(s, flow, phi, t).min();
  if (th < -cfg.temperature_tolerance) {
    std::snprintf(buf, sizeof buf, "min(theta + Theta phi') = %.6g below -%.3g at t = %.6g", th,
                  cfg.temperature_tolerance, t);
    message = buf;
    return "temperature_negativity";
  }
  return {};
}

}  // namespace

RunResult run(const HomogeneousState& s0, const OuterFlow& flow, const CutoffPhi& phi, const SolverConfig& cfg,
              const RunOptions& options) {
  cfg.validate();
  if (options.check_hypotheses) {
    const HypothesisReport h = check_initial_hypotheses(s0, flow, phi, cfg);
    if (!h.ok()) throw HypothesisViolation("initial data rejected: " + h.describe());
  }
  const CorrectorSet correctors =
      (options.use_correctors && cfg.epsilon > 0.0) ? build_correctors(s0, flow, phi, cfg) : CorrectorSet{};

  RunResult result;
  HomogeneousState s = HomogeneousState::from_prognostic(s0.u, s0.theta, s0.h);
  const long n_steps = std::lround(cfg.t_end / cfg.dt);

  auto record = [&](double t) {
    if (!options.monitors) return true;
    try {
      result.history.push_back(monitor(s, flow, phi, cfg, t, correctors));
      return true;
    } catch (const SolverError& e) {
      result.status = e.reason();
      result.message = e.what();
      return false;
    }
  };

  if (!record(0.0)) {
    result.final_state = s;
    return result;
  }
  for (long n = 0; n < n_steps; ++n) {
    const double t = static_cast<double>(n) * cfg.dt;
    const double t_next = static_cast<double>(n + 1) * cfg.dt;
    HomogeneousState next;
    try {
      next = step(s, flow, phi, cfg, correctors, t, options.forcing);
    } catch (const SolverError& e) {
      result.status = e.reason();
      result.message = e.what();
      break;
    }
    std::string message;
    const std::string failure = invariant_failure(next, flow, phi, cfg, t_next, message);
    s = std::move(next);
    result.steps = static_cast<int>(n + 1);
    result.t_final = t_next;
    if (!failure.empty()) {
      if (failure != "norm_blowup") record(t_next);
      result.status = failure;
      result.message = message;
      break;
    }
    result.last_good_t = t_next;
    if (options.observer) options.observer(result.steps, t_next, s);
    if ((n + 1) % cfg.monitor_every == 0 || n + 1 == n_steps) {
      if (!record(t_next)) break;
    }
  }
  result.final_state = std::move(s);
  return result;
}

}  // namespace mhdlab
