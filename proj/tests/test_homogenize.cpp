#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mhdlab/homogenize.hpp"
#include "mhdlab/operators.hpp"
#include "test_support.hpp"

using namespace mhdlab;
using testsupport::max_diff;

TEST_CASE("zero outer flow makes the transform the identity") {
  const Grid g = Grid::make(16, 40, 8.0, 1.0);
  const HomogeneousState s = testsupport::random_state(g, 4);
  const PhysicalState p = from_homogeneous(s, flow_presets::zero(), CutoffPhi(1.0), 0.3);
  CHECK(max_diff(p.u1, s.u) == 0.0);
  CHECK(max_diff(p.h1, s.h) == 0.0);
  CHECK(max_diff(p.theta_phys, s.theta) == 0.0);
  CHECK(max_diff(p.u2, s.v) == 0.0);
  CHECK(max_diff(p.h2, s.g) == 0.0);
}

TEST_CASE("transform round trip") {
  const Grid g = Grid::make(16, 40, 8.0, 1.0);
  const CutoffPhi phi(1.0);
  for (unsigned seed = 1; seed <= 10; ++seed) {
    const OuterFlow flow = testsupport::random_flow(seed);
    const HomogeneousState s = testsupport::random_state(g, seed + 50);
    const HomogeneousState back = to_homogeneous(from_homogeneous(s, flow, phi, 0.2), flow, phi, 0.2);
    CHECK(max_diff(back.u, s.u) < 1e-13);
    CHECK(max_diff(back.theta, s.theta) < 1e-13);
    CHECK(max_diff(back.h, s.h) < 1e-13);
    CHECK(max_diff(back.v, s.v) < 1e-12);
    CHECK(max_diff(back.g, s.g) < 1e-12);
  }
}

TEST_CASE("outer profile maps to the zero state") {
  const Grid g = Grid::make(16, 40, 8.0, 1.0);
  const CutoffPhi phi(1.0);
  const OuterFlow flow = testsupport::random_flow(9);
  const PhysicalState p = from_homogeneous(HomogeneousState::zero(g), flow, phi, 0.1);
  for (int i = 0; i < g.n_x; ++i) {
    const FlowPoint f = eval_flow(flow, 0.1, g.x(i));
    for (int j = 0; j < g.n_y; ++j) {
      CHECK(p.u1(i, j) == doctest::Approx(f.U * phi.eval(g.y(j), 1)));
      CHECK(p.h2(i, j) == doctest::Approx(-f.H_x * phi.eval(g.y(j))));
    }
    // far field recovers the traces; phi' = 1 aloft
    CHECK(p.u1(i, g.n_y - 1) == f.U);
    CHECK(p.theta_phys(i, g.n_y - 1) == f.Theta);
    CHECK(p.h1(i, g.n_y - 1) == f.H);
  }
}

TEST_CASE("reconstructed normal components") {
  const Grid g = Grid::make(32, 161, 8.0, 1.0);
  const Field flat = Field::sample(g, [](double, double y) { return y * std::exp(-y); });
  const VG z = reconstruct_vg(flat, flat);
  CHECK(z.v.max_abs() < 1e-14);
  CHECK(z.g.max_abs() < 1e-14);

  const Field u = Field::sample(g, [](double x, double y) { return std::sin(x) * std::exp(-y); });
  const VG vg = reconstruct_vg(u, u);
  const Field want = Field::sample(g, [](double x, double y) { return -std::cos(x) * (1.0 - std::exp(-y)); });
  const double dx = g.dx(), dy = g.dy();
  CHECK(max_diff(vg.v, want) < 0.05 * dy * dy + 0.05 * std::pow(dx, 4));
  for (int i = 0; i < g.n_x; ++i) CHECK(vg.v(i, 0) == 0.0);

  const Field div = ddx(u) + ddy(vg.v);
  CHECK(div.max_abs() < 0.5 * dy * dy);
}

TEST_CASE("source support over randomized outer flows") {
  const CutoffPhi phi(1.0);
  const Grid g = Grid::make(16, 81, 8.0, 1.0);
  const PhysicalConstants pc{0.8, 1.3, 0.6, 1.7};
  for (unsigned seed = 1; seed <= 10; ++seed) {
    const OuterFlow flow = testsupport::random_flow(seed);
    const double t = 0.1 * seed;
    const SourceTerms r = source_terms(flow, phi, pc, g, t);
    for (int i = 0; i < g.n_x; ++i) {
      const FlowPoint f = eval_flow(flow, t, g.x(i));
      for (int j = 0; j < g.n_y; ++j) {
        const double y = g.y(j);
        if (y >= 2.0) {
          CHECK(r.r1(i, j) == 0.0);
          CHECK(r.r2(i, j) == 0.0);
          CHECK(r.r3(i, j) == 0.0);
          CHECK(r.r4(i, j) == 0.0);
        } else if (y <= 1.0) {
          CHECK(r.r1(i, j) == -f.P_x);
          CHECK(r.r2(i, j) == 0.0);
          CHECK(r.r3(i, j) == 0.0);
          CHECK(r.r4(i, j) == 0.0);
        }
      }
    }
  }
}

TEST_CASE("zero outer flow produces no sources") {
  const Grid g = Grid::make(16, 40, 8.0, 1.0);
  const SourceTerms r = source_terms(flow_presets::zero(), CutoffPhi(1.0), PhysicalConstants{}, g, 0.0);
  CHECK(r.r1.max_abs() == 0.0);
  CHECK(r.r2.max_abs() == 0.0);
  CHECK(r.r3.max_abs() == 0.0);
  CHECK(r.r4.max_abs() == 0.0);
}

TEST_CASE("source terms scale with the amplitude of each trace") {
  const Grid g = Grid::make(16, 81, 8.0, 1.0);
  const CutoffPhi phi(1.0);
  const PhysicalConstants pc{0.8, 1.3, 0.6, 1.7};
  auto l2 = [](const Field& f) {
    double s = 0;
    for (double v : f.values()) s += v * v;
    return std::sqrt(s);
  };

  // U alone: r1 is linear in U, r2 = mu (U phi'')^2 is quadratic
  OuterFlow only_u;
  only_u.U = TraceFunction::traveling(0.6, 1.0, 0.3, 0.4);
  OuterFlow only_u2 = only_u;
  only_u2.U.scale(2.0);
  const SourceTerms a = source_terms(only_u, phi, pc, g, 0.2), b = source_terms(only_u2, phi, pc, g, 0.2);
  CHECK(l2(b.r1) == doctest::Approx(2.0 * l2(a.r1)).epsilon(1e-12));
  CHECK(l2(b.r2) == doctest::Approx(4.0 * l2(a.r2)).epsilon(1e-12));
  CHECK(l2(a.r3) == 0.0);

  // H alone: r3, r4 linear, r2 = nu (H phi'')^2 quadratic
  OuterFlow only_h;
  only_h.H = TraceFunction::traveling(0.5, 2.0, 0.7, 1.0);
  OuterFlow only_h2 = only_h;
  only_h2.H.scale(2.0);
  const SourceTerms c = source_terms(only_h, phi, pc, g, 0.2), d = source_terms(only_h2, phi, pc, g, 0.2);
  CHECK(l2(d.r3) == doctest::Approx(2.0 * l2(c.r3)).epsilon(1e-12));
  CHECK(l2(d.r4) == doctest::Approx(2.0 * l2(c.r4)).epsilon(1e-12));
  CHECK(l2(d.r2) == doctest::Approx(4.0 * l2(c.r2)).epsilon(1e-12));
  CHECK(l2(c.r1) == 0.0);

  // Theta alone: r2 linear
  OuterFlow only_t;
  only_t.Theta = TraceFunction::traveling(0.5, 1.0, 0.2, 1.0);
  OuterFlow only_t2 = only_t;
  only_t2.Theta.scale(2.0);
  CHECK(l2(source_terms(only_t2, phi, pc, g, 0.1).r2) ==
        doctest::Approx(2.0 * l2(source_terms(only_t, phi, pc, g, 0.1).r2)).epsilon(1e-12));
}
