#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "mhdlab/diagnostics.hpp"
#include "mhdlab/norms.hpp"
#include "mhdlab/operators.hpp"
#include "mhdlab/presets.hpp"
#include "mhdlab/run.hpp"
#include "test_support.hpp"

using namespace mhdlab;
using testsupport::max_diff;

namespace {

const Grid kGrid = Grid::make(32, 161, 8.0, 1.0);

HomogeneousState x_constant_field(const Grid& g, double c) {
  return HomogeneousState::from_prognostic(Field(g), Field(g), Field(g, c));
}

/// Shear-type data with randomized amplitudes and a random nonnegative theta.
HomogeneousState random_admissible_state(unsigned seed) {
  std::mt19937_64 rng(seed + 7);
  std::uniform_real_distribution<double> a(0.2, 1.5);
  const HomogeneousState sh = make_initial_state(
      "shear", kGrid, {{"A", a(rng)}, {"tilt", a(rng) / 3}, {"field", a(rng)}, {"field_tilt", a(rng) / 3}});
  const HomogeneousState r = testsupport::random_state(kGrid, seed + 100, 0.2);
  return HomogeneousState::from_prognostic(sh.u, r.theta, sh.h);
}

}  // namespace

TEST_CASE("stream function oracles") {
  const double c = 0.7;
  const Field psi = stream_function(Field(kGrid, c));
  const Field psi_exact = Field::sample(kGrid, [&](double, double y) { return c * y; });
  CHECK(max_diff(psi, psi_exact) < 1e-12);

  const Field h = Field::sample(kGrid, [](double, double y) { return std::exp(-y); });
  const Field psi2 = stream_function(h);
  const Field exact2 = Field::sample(kGrid, [](double, double y) { return 1.0 - std::exp(-y); });
  // trapezoid error dy^2/12 |h'|_inf y
  CHECK(max_diff(psi2, exact2) < 5e-4);
}

TEST_CASE("minus d_x psi recovers g") {
  const HomogeneousState s = testsupport::random_state(kGrid, 3);
  const Field psi = stream_function(s.h);
  CHECK(max_diff(-1.0 * ddx(psi), s.g) < 1e-12);
  CHECK(max_diff(ddy(psi), s.h) < 1e-2 * s.h.max_abs());
}

TEST_CASE("eta coefficients in the uniform field case") {
  // h = c, H = 0: eta1 = u_y / c
  const double c = 2.0;
  SolverConfig cfg;
  const CutoffPhi phi(1.0);
  const OuterFlow flow = flow_presets::zero();
  Field u = Field::sample(kGrid, [](double x, double y) { return std::sin(x) * std::exp(-y); });
  const HomogeneousState s = HomogeneousState::from_prognostic(u, Field(kGrid), Field(kGrid, c));
  const EtaCoefficients e = eta_coefficients(s, flow, phi, cfg, 0.0);
  const Field exact = Field::sample(kGrid, [&](double x, double y) { return -std::sin(x) * std::exp(-y) / c; });
  // interior nodes: one-sided ddy at the ends is only first order accurate
  double err = 0.0;
  for (int i = 0; i < kGrid.n_x; ++i)
    for (int j = 1; j + 1 < kGrid.n_y; ++j) err = std::max(err, std::abs(e.eta1(i, j) - exact(i, j)));
  CHECK(err < 2e-3);
  CHECK(e.eta2.max_abs() == 0.0);
  CHECK(e.eta3.max_abs() < 1e-14);
}

TEST_CASE("eta vanishes without shear and refuses a breached floor") {
  SolverConfig cfg;
  const CutoffPhi phi(1.0);
  const HomogeneousState s = x_constant_field(kGrid, 1.0);
  const EtaCoefficients e = eta_coefficients(s, flow_presets::constant(0.0, 0.0, 0.0), phi, cfg, 0.0);
  CHECK(e.eta1.max_abs() == 0.0);

  const HomogeneousState weak = x_constant_field(kGrid, 0.05);
  CHECK_THROWS_AS(eta_coefficients(weak, flow_presets::zero(), phi, cfg, 0.0), MagneticFloorBreach);
  try {
    eta_coefficients(weak, flow_presets::zero(), phi, cfg, 0.0);
  } catch (const MagneticFloorBreach& b) {
    CHECK(b.value() == doctest::Approx(0.05));
    CHECK(b.reason() == "magnetic_floor");
  }
}

TEST_CASE("eta amplitude stays below the frozen constant") {
  // C = 0.25 was fitted on seeds 1..60 (max ratio 0.18) and is frozen as a regression bound
  constexpr double kFrozen = 0.25;
  const CutoffPhi phi(1.0);
  SolverConfig cfg;
  cfg.delta0 = 0.05;
  const double lambda = 1.0;
  for (unsigned seed = 61; seed <= 90; ++seed) {
    const OuterFlow flow = testsupport::random_flow(seed);
    const HomogeneousState s = random_admissible_state(seed);
    REQUIRE(magnetic_total(s, flow, phi, 0.0).min() >= cfg.delta0);
    const EtaCoefficients e = eta_coefficients(s, flow, phi, cfg, 0.0);
    double lhs = 0.0;
    for (const Field* f : {&e.eta1, &e.eta2, &e.eta3}) lhs = std::max(lhs, weighted_sup(*f, lambda));
    const Field fs[] = {s.u, s.theta, s.h};
    const double rhs = (trace_sup(flow, kGrid, 0.0) + weighted_sobolev_norm(fs, {3, lambda - 1.0, 0})) / cfg.delta0;
    CHECK(lhs <= kFrozen * rhs);
  }
}

TEST_CASE("cancellation quantities in trivial cases") {
  SolverConfig cfg;
  const CutoffPhi phi(1.0);
  // x-independent data: d_x kills everything
  Field u = Field::sample(kGrid, [](double, double y) { return y * std::exp(-y); });
  Field h = Field::sample(kGrid, [](double, double y) { return 1.0 + 0.3 * std::exp(-y); });
  const HomogeneousState s = HomogeneousState::from_prognostic(u, Field(kGrid), h);
  const OuterFlow flow = flow_presets::constant(0.5, 0.5, 1.0);
  const CancellationQuantities q = cancellation_quantities(s, flow, phi, cfg, 0.0, {0, 1});
  CHECK(q.u_beta.max_abs() < 1e-12);
  CHECK(q.theta_beta.max_abs() < 1e-12);
  CHECK(q.h_beta.max_abs() < 1e-12);

  // beta = 0: u_beta = u - eta1 psi, h_beta = h - eta3 psi
  const CancellationQuantities q0 = cancellation_quantities(s, flow, phi, cfg, 0.0, {0, 0});
  CHECK(max_diff(q0.u_beta, s.u - hadamard(q0.eta.eta1, q0.psi)) < 1e-14);
  CHECK(max_diff(q0.dpsi, q0.psi) < 1e-14);
}

TEST_CASE("tangential psi rebuilt from h_beta converges at second order") {
  SolverConfig cfg;
  const CutoffPhi phi(1.0);
  const OuterFlow flow = flow_presets::traveling_pair(1.0, 1.0, 0.2, 0.5, 0.3, 1.0);
  double prev = 0.0;
  for (int n_y : {161, 321, 641}) {
    const Grid g = Grid::make(32, n_y, 8.0, 1.0);
    const HomogeneousState s = make_initial_state("shear", g);
    const CancellationQuantities q = cancellation_quantities(s, flow, phi, cfg, 0.0, {0, 1});
    const double err = (rebuild_tangential_psi(q) - q.dpsi).max_abs() / q.dpsi.max_abs();
    if (prev > 0.0) CHECK(std::log2(prev / err) > 1.7);
    prev = err;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("M(t) at the zero state and monotone in the data") {
  SolverConfig cfg;
  cfg.delta0 = 0.1;
  const HomogeneousState z = HomogeneousState::zero(kGrid);
  CHECK(m_of_t(z, flow_presets::zero(), cfg, 0.0) == doctest::Approx(2.0 / cfg.delta0));
  const HomogeneousState s = make_initial_state("shear", kGrid);
  const OuterFlow flow = flow_presets::traveling_pair(1.0, 1.0, 0.2, 0.5, 0.3, 1.0);
  double prev = m_of_t(z, flow, cfg, 0.0);
  for (double a : {0.5, 1.0, 2.0}) {
    const HomogeneousState sa = HomogeneousState::from_prognostic(a * s.u, a * s.theta, a * s.h);
    const double m = m_of_t(sa, flow, cfg, 0.0);
    CHECK(m > prev);
    prev = m;
  }
}

TEST_CASE("norm equivalence is trivially satisfied at zero") {
  SolverConfig cfg;
  const CutoffPhi phi(1.0);
  const EquivalenceCheck e =
      norm_equivalence_check(HomogeneousState::zero(kGrid), flow_presets::zero(), phi, cfg, 0.0, {0, 1});
  CHECK(e.trivial);
  CHECK(e.pass);
}

TEST_CASE("norm equivalence holds on the shear preset") {
  const Scenario sc = scenarios::shear();
  for (TangentialIndex beta : {TangentialIndex{0, 1}, TangentialIndex{0, 2}, TangentialIndex{1, 0}}) {
    const EquivalenceCheck e = norm_equivalence_check(sc.s0, sc.flow, sc.phi, sc.cfg, 0.0, beta);
    CHECK(e.pass);
    CHECK_FALSE(e.trivial);
    CHECK(e.ratio > 1.0 / e.m);
  }
}

TEST_CASE("monitor reports the constraints and hypotheses") {
  const Scenario sc = scenarios::shear();
  const MonitorReport r = monitor(sc.s0, sc.flow, sc.phi, sc.cfg, 0.0);
  // ddy of the trapezoid antiderivative is exact only to O(dy^2)
  const double dy = sc.grid.dy();
  CHECK(r.div_u < 2.0 * dy * dy);
  CHECK(r.div_h < 2.0 * dy * dy);
  CHECK(r.hypothesis_ok);
  CHECK(r.equiv_pass);
  CHECK_FALSE(r.flagged);
  CHECK(r.norm > 0.0);
  CHECK(r.min_theta_total >= -1e-14);
}

TEST_CASE("zero scenario runs to completion and stays at zero") {
  const Scenario sc = scenarios::zero();
  const RunResult r = run(sc.s0, sc.flow, sc.phi, sc.cfg);
  CHECK(r.completed());
  CHECK(r.t_final == doctest::Approx(sc.cfg.t_end));
  CHECK(r.final_state.u.max_abs() == 0.0);
  CHECK(r.final_state.h.max_abs() == 0.0);
  REQUIRE_FALSE(r.history.empty());
  for (const auto& m : r.history) CHECK(m.norm == 0.0);
}

TEST_CASE("initial data below twice the floor is rejected") {
  Scenario sc = scenarios::zero();
  sc.cfg.check_magnetic_floor = true;
  sc.cfg.delta0 = 0.1;
  const HomogeneousState s0 = x_constant_field(sc.grid, sc.cfg.delta0 / 2);
  CHECK_THROWS_AS(run(s0, sc.flow, sc.phi, sc.cfg), HypothesisViolation);
  const HypothesisReport h = check_initial_hypotheses(s0, sc.flow, sc.phi, sc.cfg);
  CHECK_FALSE(h.floor_ok);
  CHECK(h.theta_ok);
  CHECK_FALSE(h.describe().empty());
}

TEST_CASE("negative initial temperature is rejected") {
  Scenario sc = scenarios::zero();
  Field theta = Field::sample(sc.grid, [](double, double y) { return -y * std::exp(-y); });
  const HomogeneousState s0 = HomogeneousState::from_prognostic(Field(sc.grid), theta, Field(sc.grid));
  CHECK_THROWS_AS(run(s0, sc.flow, sc.phi, sc.cfg), HypothesisViolation);
}

TEST_CASE("observer sees every step") {
  const Scenario sc = scenarios::zero();
  RunOptions opt;
  int calls = 0;
  double last = 0.0;
  opt.observer = [&](int, double t, const HomogeneousState&) {
    ++calls;
    last = t;
  };
  const RunResult r = run(sc.s0, sc.flow, sc.phi, sc.cfg, opt);
  CHECK(calls == r.steps);
  CHECK(last == doctest::Approx(sc.cfg.t_end));
}

TEST_CASE("presets reject unknown names and parameters") {
  CHECK_THROWS_AS(make_flow("vortex"), std::invalid_argument);
  CHECK_THROWS_AS(make_flow("constant", {{"V", 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_initial_state("nope", kGrid), std::invalid_argument);
  try {
    make_initial_state("shear", kGrid, {{"amplitude", 1.0}});
    FAIL("expected a throw");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("amplitude") != std::string::npos);
  }
  const OuterFlow f = make_flow("constant", {{"U", 0.5}, {"H", 2.0}});
  CHECK(f.U.eval(0.3, 1.0) == doctest::Approx(0.5));
  CHECK(f.H.eval(0.3, 1.0) == doctest::Approx(2.0));
}

TEST_CASE("preset initial data satisfy the boundary conditions") {
  for (const char* name : {"shear", "magnetic_floor", "mms"}) {
    const HomogeneousState s = make_initial_state(name, kGrid);
    for (int i = 0; i < kGrid.n_x; ++i) {
      CHECK(s.u(i, 0) == doctest::Approx(0.0));
      CHECK(s.theta(i, 0) == doctest::Approx(0.0));
      CHECK(std::abs(s.u(i, kGrid.n_y - 1)) < 1e-12);
      CHECK(std::abs(s.h(i, kGrid.n_y - 1)) < 1e-12);
    }
  }
}
