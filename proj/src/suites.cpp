#include "mhdlab/suites.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "mhdlab/inequalities.hpp"
#include "mhdlab/mms.hpp"
#include "mhdlab/presets.hpp"
#include "mhdlab/verification.hpp"

namespace mhdlab {

namespace {

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

/// Orders past the first level of a ladder must all fall in [lo, hi].
void add_orders(SuiteReport& rep, const std::string& axis, const std::vector<ConvergenceLevel>& levels, double lo,
                double hi) {
  for (std::size_t k = 1; k < levels.size(); ++k) {
    CheckRecord c;
    c.name = "mms_order_" + axis + "_" + std::to_string(k);
    c.value = levels[k].order;
    c.pass = std::isfinite(c.value) && c.value >= lo && c.value <= hi;
    c.criterion = std::isinf(hi) ? fmt("order >= %g", lo) : fmt("order in [%g, %g]", lo, hi);
    c.detail = fmt("parameter %.6g, error %.6g", levels[k].parameter, levels[k].error);
    rep.checks.push_back(c);
  }
}

}  // namespace

bool SuiteReport::pass() const {
  if (checks.empty()) return false;
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

nlohmann::json to_json(const SuiteReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    // NaN has no JSON spelling
    const nlohmann::json value = std::isfinite(c.value) ? nlohmann::json(c.value) : nlohmann::json(nullptr);
    checks.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"value", value},
                      {"criterion", c.criterion},
                      {"seed", c.seed},
                      {"detail", c.detail}});
  }
  return {{"suite", r.suite}, {"pass", r.pass()}, {"checks", checks}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"inequalities", "mms", "epsilon", "uniqueness"};
  return names;
}

std::vector<SuiteReport> run_suites(const std::string& name, std::uint64_t seed, int n_samples) {
  if (name == "all") {
    std::vector<SuiteReport> out;
    for (const auto& n : suite_names()) out.push_back(run_suites(n, seed, n_samples).front());
    return out;
  }
  if (name == "inequalities") return {inequality_suite(seed, n_samples)};
  if (name == "mms") return {mms_suite()};
  if (name == "epsilon") return {epsilon_suite()};
  if (name == "uniqueness") return {uniqueness_suite()};
  throw std::invalid_argument("unknown suite '" + name + "'");
}

SuiteReport inequality_suite(std::uint64_t seed, int n_samples) {
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  SuiteReport rep{"inequalities", {}};
  for (const InequalityResult& r : run_inequality_suite(seed, n_samples)) {
    CheckRecord c;
    c.name = r.name;
    c.pass = r.pass;
    c.seed = r.seed;
    if (r.fitted_constant > 0.0) {
      c.value = r.holdout_constant / r.fitted_constant;
      c.criterion = "held-out C / fitted C in [0.75, 1.25]";
      c.detail = fmt("fitted C %.6g, held-out C %.6g", r.fitted_constant, r.holdout_constant);
    } else if (r.name == "e2_equality") {
      c.value = r.worst_ratio;
      c.criterion = "ratio in 1 +- 1e-3";
    } else {
      c.value = r.worst_ratio;
      c.criterion = "LHS <= RHS (1 + slack + tail)";
      c.detail = fmt("%g samples, slack %.3g", static_cast<double>(r.samples), r.slack);
    }
    if (!r.pass) c.detail += (c.detail.empty() ? "" : "; ") + ("witness " + r.witness);
    rep.checks.push_back(c);
  }
  return rep;
}

SuiteReport mms_suite() {
  SuiteReport rep{"mms", {}};
  const MmsReport r = mms_convergence(MmsSpec::standard());
  CheckRecord ran{"mms_runs_completed", r.failure.empty(), 0.0, "every ladder run completes", 0, r.failure};
  rep.checks.push_back(ran);
  add_orders(rep, "dy", r.dy, 1.6, 2.4);
  add_orders(rep, "dx", r.dx, 3.0, INFINITY);
  add_orders(rep, "dt", r.dt, 0.7, 1.3);
  return rep;
}

double magnetic_floor_horizon(double epsilon) {
  const Scenario sc = scenarios::magnetic_floor(epsilon);
  RunOptions opt;
  opt.monitors = false;
  const RunResult r = run(sc.s0, sc.flow, sc.phi, sc.cfg, opt);
  return r.status == "magnetic_floor" || r.completed() ? r.last_good_t : std::nan("");
}

SuiteReport epsilon_suite() {
  SuiteReport rep{"epsilon", {}};
  const std::vector<double> eps{1e-2, 5e-3, 2.5e-3};
  const EpsilonStudyReport st = epsilon_study(scenarios::shear(), eps);
  std::string diffs;
  for (std::size_t k = 0; k + 1 < st.rows.size(); ++k) diffs += fmt("%.4g ", st.rows[k].difference);
  rep.checks.push_back({"epsilon_differences_monotone", st.completed && st.monotone, st.norm_variation,
                        "all runs complete and successive differences do not increase", 0, "differences " + diffs});

  double lo = INFINITY, hi = 0.0;
  std::string horizons;
  for (double e : eps) {
    const double h = magnetic_floor_horizon(e);
    lo = std::min(lo, h);
    hi = std::max(hi, h);
    horizons += fmt("%.4g ", h);
  }
  const double change = hi > 0.0 ? (hi - lo) / hi : INFINITY;
  rep.checks.push_back({"magnetic_floor_horizon", lo >= 0.2, lo, "horizon >= 0.2", 0, "horizons " + horizons});
  rep.checks.push_back({"magnetic_floor_horizon_epsilon_change", change < 0.05, change, "relative change < 0.05", 0,
                        "horizons " + horizons});
  return rep;
}

SuiteReport uniqueness_suite() {
  SuiteReport rep{"uniqueness", {}};
  Scenario sc = scenarios::shear();
  sc.cfg.t_end = 0.2;
  UniquenessOptions opt;
  opt.record_interval = 0.002;
  const double dt = 2.5e-4;
  auto contraction = [&](const HomogeneousState& a, const HomogeneousState& b, double step) {
    SolverConfig cfg = sc.cfg;
    cfg.dt = step;
    return uniqueness_contraction(a, b, sc.flow, sc.phi, cfg, opt);
  };

  const UniquenessReport same = contraction(sc.s0, sc.s0, dt);
  rep.checks.push_back({"identical_data", same.completed() && same.sup_energy <= 1e-20, same.sup_energy,
                        "sup E <= 1e-20", 0, same.status});

  const HomogeneousState b = perturb_magnetic_field(sc.s0, 1e-6);
  const UniquenessReport coarse = contraction(b, sc.s0, dt);
  const UniquenessReport fine = contraction(b, sc.s0, dt / 2);
  const double rel = std::abs(fine.c_fit / coarse.c_fit - 1.0);
  rep.checks.push_back({"c_fit_dt_halving", coarse.completed() && fine.completed() && rel <= 0.15, rel,
                        "|C(dt/2) / C(dt) - 1| <= 0.15", 0,
                        fmt("C(dt) %.6g, C(dt/2) %.6g", coarse.c_fit, fine.c_fit)});

  double prev = INFINITY;
  bool monotone = true;
  std::string sups;
  for (double delta : {1e-4, 1e-6, 1e-8}) {
    const UniquenessReport r = contraction(perturb_magnetic_field(sc.s0, delta), sc.s0, dt);
    monotone = monotone && r.completed() && r.sup_energy < prev;
    prev = r.sup_energy;
    sups += fmt("%.4g ", r.sup_energy);
  }
  rep.checks.push_back({"sup_energy_vanishes_with_data", monotone, prev,
                        "sup E strictly decreasing over delta = 1e-4, 1e-6, 1e-8", 0, "sup E " + sups});

  const UniquenessReport swapped = contraction(sc.s0, b, dt);
  rep.checks.push_back({"swapped_roles", swapped.completed() && std::isfinite(swapped.c_fit), swapped.c_fit,
                        "C finite with the roles of the solutions exchanged", 0,
                        fmt("C %.6g vs %.6g unswapped", swapped.c_fit, coarse.c_fit)});
  return rep;
}

}  // namespace mhdlab
