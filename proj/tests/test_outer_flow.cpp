#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "mhdlab/outer_flow.hpp"

using namespace mhdlab;
using std::numbers::pi;

TEST_CASE("cutoff plateaus are exact") {
  for (double r0 : {1.0, 0.5, 2.0}) {
    const CutoffPhi phi(r0);
    for (double y : {0.0, 0.3 * r0, 0.5 * r0, r0}) {
      const auto v = phi.eval_all(y);
      for (double d : v) CHECK(d == 0.0);
    }
    for (double y : {2.0 * r0, 3.0 * r0, 10.0 * r0}) {
      const auto v = phi.eval_all(y);
      CHECK(v[0] == y);
      CHECK(v[1] == 1.0);
      CHECK(v[2] == 0.0);
      CHECK(v[3] == 0.0);
    }
  }
}

TEST_CASE("cutoff blend value at the midpoint") {
  // s = 1/2: p = 53/64, p' = 121/32, p'' = 15/8, p''' = -315/4
  for (double r0 : {1.0, 2.0}) {
    const CutoffPhi phi(r0);
    const auto v = phi.eval_all(1.5 * r0);
    CHECK(v[0] == doctest::Approx(r0 * 53.0 / 64.0).epsilon(1e-14));
    CHECK(v[1] == doctest::Approx(121.0 / 32.0).epsilon(1e-14));
    CHECK(v[2] == doctest::Approx(15.0 / 8.0 / r0).epsilon(1e-14));
    CHECK(v[3] == doctest::Approx(-315.0 / 4.0 / (r0 * r0)).epsilon(1e-14));
  }
}

TEST_CASE("cutoff is C3 across both junctions") {
  const CutoffPhi phi(1.0);
  const double h = 1e-7;
  for (double y0 : {1.0, 2.0}) {
    const auto lo = phi.eval_all(y0 - h), hi = phi.eval_all(y0 + h);
    // the fourth derivative jumps (|p''''(0)| = 1320), so one-sided limits differ by O(h)
    for (int k = 0; k < 4; ++k) CHECK(std::abs(lo[k] - hi[k]) < 2e-3);
  }
}

TEST_CASE("cutoff slope stays within the derived range") {
  const CutoffPhi phi(1.0);
  double lo = 1e300, hi = -1e300;
  for (int k = 0; k <= 100000; ++k) {
    const double d1 = phi.eval(1.0 + k * 1e-5, 1);
    lo = std::min(lo, d1);
    hi = std::max(hi, d1);
  }
  CHECK(lo >= 0.0);
  CHECK(hi == doctest::Approx(3.80355).epsilon(1e-5));
}

TEST_CASE("cutoff derivatives are consistent with finite differences") {
  const CutoffPhi phi(1.0);
  const double h = 1e-5;
  for (double y : {1.1, 1.37, 1.5, 1.8, 1.95}) {
    for (int k = 0; k < 3; ++k) {
      const double fd = (phi.eval(y + h, k) - phi.eval(y - h, k)) / (2 * h);
      CHECK(fd == doctest::Approx(phi.eval(y, k + 1)).epsilon(1e-6));
    }
  }
}

TEST_CASE("cutoff rejects unsupported derivative orders") {
  const CutoffPhi phi(1.0);
  CHECK_THROWS_AS(phi.eval(1.5, 4), std::invalid_argument);
  CHECK_THROWS_AS(phi.eval(1.5, -1), std::invalid_argument);
}

TEST_CASE("trace function derivatives agree with finite differences") {
  TraceFunction f = TraceFunction::traveling(0.7, 2.0, 0.4, 1.2, 0.3);
  f.add_mode({{0.2, -0.5, 0.3, 0.1}, 1.0, 0.9, 1.1});
  const double h = 1e-5;
  for (double t : {0.0, 0.37}) {
    for (double x : {0.1, 2.5, 5.9}) {
      for (int nt = 0; nt < 3; ++nt)
        for (int nx = 0; nx < 3; ++nx) {
          const double fdt = (f.eval(t + h, x, nt, nx) - f.eval(t - h, x, nt, nx)) / (2 * h);
          const double fdx = (f.eval(t, x + h, nt, nx) - f.eval(t, x - h, nt, nx)) / (2 * h);
          CHECK(fdt == doctest::Approx(f.eval(t, x, nt + 1, nx)).epsilon(1e-6));
          CHECK(fdx == doctest::Approx(f.eval(t, x, nt, nx + 1)).epsilon(1e-6));
        }
    }
  }
}

TEST_CASE("matching residuals") {
  std::vector<double> xs;
  for (int i = 0; i < 64; ++i) xs.push_back(2 * pi * i / 64);
  auto max_abs = [](const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  };

  const MatchingResiduals c = matching_residuals(flow_presets::constant(1.0, 2.0, 0.5, 3.0), 0.2, xs);
  CHECK(max_abs(c.momentum) == 0.0);
  CHECK(max_abs(c.temperature) == 0.0);
  CHECK(max_abs(c.induction) == 0.0);

  const MatchingResiduals a = matching_residuals(flow_presets::steady_alfven(0.0, 1.0, 1.0, 1.0), 0.0, xs);
  CHECK(max_abs(a.momentum) < 1e-15);
  CHECK(max_abs(a.induction) < 1e-15);

  for (double t : {0.0, 0.4}) {
    const MatchingResiduals p =
        matching_residuals(flow_presets::traveling_pair(0.8, 1.5, 0.3, 1.0, 0.2, 2.0), t, xs);
    CHECK(max_abs(p.momentum) < 1e-14);
    CHECK(max_abs(p.temperature) < 1e-14);
    CHECK(max_abs(p.induction) < 1e-14);
  }

  OuterFlow s;
  s.U = TraceFunction::traveling(1.0, 1.0, 0.0);
  const MatchingResiduals m = matching_residuals(s, 0.0, xs);
  CHECK(max_abs(m.momentum) == doctest::Approx(0.5).epsilon(1e-12));
  for (std::size_t i = 0; i < xs.size(); ++i)
    CHECK(m.momentum[i] == doctest::Approx(std::sin(xs[i]) * std::cos(xs[i])).epsilon(1e-12));
}

TEST_CASE("M0 estimate") {
  const std::vector<double> ts{0.0, 0.5, 1.0};
  CHECK(m0_estimate(flow_presets::zero(), ts, 2) == 0.0);
  CHECK(m0_estimate(flow_presets::constant(1.0, 0.0, 0.0), ts, 1) == doctest::Approx(std::sqrt(2 * pi)).epsilon(1e-12));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(0.1, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    OuterFlow f = flow_presets::traveling_pair(d(rng), d(rng), d(rng), d(rng), d(rng), 1.0 + trial % 3);
    const double base = m0_estimate(f, ts, 2);
    f.scale(2.0);
    CHECK(m0_estimate(f, ts, 2) == doctest::Approx(2.0 * base).epsilon(1e-12));
  }
}

TEST_CASE("preset temperatures are nonnegative") {
  const std::vector<double> ts{0.0, 0.25, 0.5, 1.0};
  CHECK(min_theta(flow_presets::traveling_pair(1.0, 1.0, 0.2, 0.5, 0.3, 1.0), ts) >= 0.0);
  CHECK(min_theta(flow_presets::traveling_pair(1.0, 1.0, 0.2, 0.5, 0.3, 1.0), ts) ==
        doctest::Approx(0.2).epsilon(1e-3));
}
