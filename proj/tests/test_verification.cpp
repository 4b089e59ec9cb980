#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "mhdlab/inequalities.hpp"
#include "mhdlab/mms.hpp"
#include "mhdlab/poly_exp.hpp"
#include "mhdlab/presets.hpp"
#include "mhdlab/verification.hpp"

using namespace mhdlab;
using std::numbers::pi;

namespace {

/// Family with a single member: amplitude 1, k = 0, a = 1, p = 1.
TestFunctionFamily pure_exponential() {
  TestFunctionFamily f;
  f.amplitude_min = f.amplitude_max = 1.0;
  f.wavenumbers = {0};
  f.decay_min = f.decay_max = 1.0;
  f.poly_degree = 0;
  f.phase_max = 0.0;
  return f;
}

const InequalityResult& find(const std::vector<InequalityResult>& rs, const std::string& name) {
  for (const auto& r : rs)
    if (r.name == name) return r;
  throw std::runtime_error("missing result " + name);
}

}  // namespace

TEST_CASE("PolyExp evaluation, derivative and antiderivative") {
  const PolyExp p({1.0, 2.0}, 1.0);  // (1 + 2y) e^{-y}
  const double y = 0.7;
  CHECK(p.eval(y) == doctest::Approx((1 + 2 * y) * std::exp(-y)));
  CHECK(p.eval(y, 1) == doctest::Approx((1 - 2 * y) * std::exp(-y)));
  CHECK(p.derivative().eval(y) == doctest::Approx(p.eval(y, 1)));
  // int_0^y (1 + 2t) e^{-t} dt = 3 - (3 + 2y) e^{-y}
  CHECK(p.integral(y) == doctest::Approx(3.0 - (3.0 + 2 * y) * std::exp(-y)));
  CHECK(p.integral_to_infinity() == doctest::Approx(3.0));
  CHECK(PolyExp({0.0, 1.0}, 2.0).integral_to_infinity() == doctest::Approx(0.25));
  CHECK(p.integral(0.0) == 0.0);
  CHECK_THROWS_AS(PolyExp({1.0}, 0.0), std::invalid_argument);
}

TEST_CASE("Hardy inequality oracle for e^{-y}") {
  // (int <y>^{-2} (1 - e^{-y})^2)^{1/2} over T x R+ against 2 ||e^{-y}|| = 2 sqrt(pi)
  const auto rs = check_hardy(pure_exponential(), 1, {1.0});
  const InequalityResult& e7 = find(rs, "e7");
  CHECK(e7.pass);
  CHECK(e7.worst_ratio == doctest::Approx(1.71852630368510 / (2.0 * std::sqrt(pi))).epsilon(1e-4));
}

TEST_CASE("trace inequality saturates on a(x) e^{-y}") {
  TestFunction f;
  f.amplitude = 1.3;
  f.wavenumber = 2;
  f.phase = 0.4;
  f.profile = PolyExp({1.0}, 1.0);
  CHECK(trace_saturation_ratio(f) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("inequality ratios are invariant under scaling") {
  TestFunctionFamily a;
  a.seed = 11;
  TestFunctionFamily b = a;
  b.amplitude_min *= 2.0;
  b.amplitude_max *= 2.0;
  const auto ra = check_trace_inequality(a, 10);
  const auto rb = check_trace_inequality(b, 10);
  REQUIRE(ra.size() == rb.size());
  for (std::size_t k = 0; k < ra.size(); ++k) CHECK(ra[k].worst_ratio == doctest::Approx(rb[k].worst_ratio));
  const auto ha = check_hardy(a, 10), hb = check_hardy(b, 10);
  for (std::size_t k = 0; k < ha.size(); ++k) CHECK(ha[k].worst_ratio == doctest::Approx(hb[k].worst_ratio));
}

TEST_CASE("one-sided inequalities hold on the wide family") {
  TestFunctionFamily fam;
  fam.seed = 5;
  for (const auto& r : check_trace_inequality(fam, 20)) CHECK_MESSAGE(r.pass, r.name << " witness " << r.witness);
  for (const auto& r : check_hardy(fam, 20)) CHECK_MESSAGE(r.pass, r.name << " witness " << r.witness);
}

TEST_CASE("inequality suite with a reduced sample") {
  const auto rs = run_inequality_suite(3, 50);
  CHECK(rs.size() >= 10);
  for (const auto& r : rs) {
    CHECK_MESSAGE(r.pass, r.name << " ratio " << r.worst_ratio);
    CHECK(r.samples > 0);
    CHECK(r.seed == 3);
  }
}

TEST_CASE("fitted constants are reproduced on held-out pairs") {
  const TestFunctionFamily fam = TestFunctionFamily::calibration(2);
  const InequalityResult e3 = check_product_estimate(fam, 30);
  CHECK(e3.fitted_constant > 0.0);
  CHECK(std::abs(e3.holdout_constant / e3.fitted_constant - 1.0) <= 0.25);
  const InequalityResult e8 = check_antiderivative_product(fam, 30, 1.0);
  CHECK(std::abs(e8.holdout_constant / e8.fitted_constant - 1.0) <= 0.25);
}

TEST_CASE("manufactured solution satisfies its boundary data") {
  const Grid g = Grid::make(16, 61, 6.0, 1.0);
  const ManufacturedSolution m = ManufacturedSolution::standard(6.0, true);
  const HomogeneousState s = m.sample(g, 0.4);
  for (int i = 0; i < g.n_x; ++i) {
    CHECK(std::abs(s.u(i, 0)) < 1e-14);
    CHECK(std::abs(s.theta(i, 0)) < 1e-14);
    CHECK(std::abs(s.u(i, g.n_y - 1)) < 1e-14);
    CHECK(std::abs(s.h(i, g.n_y - 1)) < 1e-14);
    CHECK(std::abs(m.yh.eval(0.0, 1)) < 1e-14);
  }
  CHECK(m.time_factor(0.0) == 1.0);
  CHECK(m.time_factor(0.0, 1) == doctest::Approx(0.6));
}

TEST_CASE("reduced manufactured-solution convergence") {
  MmsSpec spec = MmsSpec::standard();
  spec.n_x = 48;
  spec.n_y_ladder = {41, 81};
  spec.cfg.t_end = 0.3;
  spec.n_y_for_x = 41;
  spec.n_x_ladder = {16, 32, 64};
  spec.dt_ladder = {0.01, 0.005};
  spec.t_end_for_t = 0.5;
  const MmsReport r = mms_convergence(spec);
  REQUIRE(r.failure.empty());
  REQUIRE(r.dy.size() == 2);
  CHECK(r.dy[1].order == doctest::Approx(2.0).epsilon(0.15));
  REQUIRE(r.dx.size() == 2);
  CHECK(r.dx[1].order == doctest::Approx(4.0).epsilon(0.15));
  REQUIRE(r.dt.size() == 2);
  CHECK(r.dt[1].order == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("fill_orders") {
  std::vector<ConvergenceLevel> lv{{0.1, 1e-2, 0.0}, {0.05, 2.5e-3, 0.0}};
  fill_orders(lv);
  CHECK(std::isnan(lv[0].order));
  CHECK(lv[1].order == doctest::Approx(2.0));
}

TEST_CASE("epsilon study on x-independent data sees no epsilon dependence") {
  Scenario sc = scenarios::zero();
  const Grid& g = sc.grid;
  Field u = Field::sample(g, [&](double, double y) { return y * std::exp(-y) * (1 - std::pow(y / g.y_max, 2)); });
  sc.s0 = HomogeneousState::from_prognostic(u, Field(g), Field(g));
  const EpsilonStudyReport r = epsilon_study(sc, {1e-2, 5e-3, 2.5e-3});
  CHECK(r.completed);
  CHECK(r.monotone);
  REQUIRE(r.rows.size() == 3);
  for (const auto& row : r.rows) CHECK(row.difference < 1e-14);
  CHECK(r.norm_variation < 1e-12);
}

TEST_CASE("epsilon study validates its list") {
  const Scenario sc = scenarios::zero();
  CHECK_THROWS_AS(epsilon_study(sc, {1e-2, 5e-3}), std::invalid_argument);
  CHECK_THROWS_AS(epsilon_study(sc, {1e-2, 2e-2, 5e-3}), std::invalid_argument);
}

TEST_CASE("difference state of identical solutions vanishes") {
  Scenario sc = scenarios::shear(81);
  sc.cfg.t_end = 0.02;
  const DifferenceState d = difference_state(sc.s0, sc.s0, sc.flow, sc.phi, sc.cfg, 0.0);
  CHECK(difference_energy(d) == 0.0);
  const UniquenessReport r = uniqueness_contraction(sc.s0, sc.s0, sc.flow, sc.phi, sc.cfg);
  CHECK(r.completed());
  CHECK(r.sup_energy == 0.0);
  CHECK(std::isnan(r.c_fit));
}

TEST_CASE("difference energy scales with the square of the perturbation") {
  Scenario sc = scenarios::shear(81);
  sc.cfg.t_end = 0.02;
  double prev = 0.0;
  for (double delta : {1e-4, 1e-6}) {
    const HomogeneousState b = perturb_magnetic_field(sc.s0, delta);
    const UniquenessReport r = uniqueness_contraction(b, sc.s0, sc.flow, sc.phi, sc.cfg);
    REQUIRE(r.completed());
    CHECK(std::isfinite(r.c_fit));
    if (prev > 0.0) CHECK(prev / r.sup_energy == doctest::Approx(1e4).epsilon(0.01));
    prev = r.sup_energy;
  }
}

TEST_CASE("psi is rebuilt from the transformed field") {
  const Scenario sc = scenarios::shear(161);
  const HomogeneousState b = perturb_magnetic_field(sc.s0, 1e-3);
  const DifferenceState d = difference_state(b, sc.s0, sc.flow, sc.phi, sc.cfg, 0.0);
  CHECK((d.psi_rebuilt - d.psi_tilde).max_abs() / d.psi_tilde.max_abs() < 0.05);
}
