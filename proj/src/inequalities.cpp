#include "mhdlab/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

namespace mhdlab {

double TestFunction::x_part(double x, int nx) const {
  const double k = wavenumber;
  return amplitude * std::pow(k, nx) * std::cos(k * x + phase + 0.5 * std::numbers::pi * nx);
}

namespace {

Field outer(const Grid& grid, const std::vector<double>& xs, const std::vector<double>& ys) {
  Field out(grid);
  for (int i = 0; i < grid.n_x; ++i)
    for (int j = 0; j < grid.n_y; ++j) out(i, j) = xs[i] * ys[j];
  return out;
}

std::vector<double> x_values(const TestFunction& f, const Grid& grid, int nx) {
  std::vector<double> xs(grid.n_x);
  for (int i = 0; i < grid.n_x; ++i) xs[i] = f.x_part(grid.x(i), nx);
  return xs;
}

}  // namespace

Field TestFunction::sample(const Grid& grid, int nx, int ny) const {
  PolyExp p = profile;
  for (int d = 0; d < ny; ++d) p = p.derivative();
  std::vector<double> ys(grid.n_y);
  for (int j = 0; j < grid.n_y; ++j) ys[j] = p.eval(grid.y(j));
  return outer(grid, x_values(*this, grid, nx), ys);
}

Field TestFunction::sample_antiderivative(const Grid& grid, int nx) const {
  std::vector<double> ys(grid.n_y);
  for (int j = 0; j < grid.n_y; ++j) ys[j] = profile.integral(grid.y(j));
  return outer(grid, x_values(*this, grid, nx), ys);
}

double TestFunction::antiderivative_limit(double x) const { return x_part(x) * profile.integral_to_infinity(); }

std::string TestFunction::describe() const {
  std::string poly;
  for (std::size_t k = 0; k < profile.coeffs().size(); ++k) {
    char term[48];
    std::snprintf(term, sizeof term, "%s%.6g*y^%zu", k ? " + " : "", profile.coeffs()[k], k);
    poly += term;
  }
  char buf[256];
  std::snprintf(buf, sizeof buf, "%.6g*cos(%d*x + %.6g)*(%s)*exp(-%.6g*y)", amplitude, wavenumber, phase,
                poly.c_str(), profile.lambda());
  return buf;
}

TestFunction TestFunctionFamily::draw(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> amp(amplitude_min, amplitude_max), decay(decay_min, decay_max),
      coeff(0.0, poly_max), phase(0.0, phase_max);
  std::uniform_int_distribution<std::size_t> pick(0, wavenumbers.size() - 1);
  TestFunction f;
  f.amplitude = amp(rng);
  f.wavenumber = wavenumbers[pick(rng)];
  f.phase = phase_max > 0.0 ? phase(rng) : 0.0;
  std::vector<double> c{1.0};
  for (int d = 0; d < poly_degree; ++d) c.push_back(coeff(rng));
  f.profile = PolyExp(std::move(c), decay(rng));
  return f;
}

TestFunctionFamily TestFunctionFamily::calibration(std::uint64_t seed) {
  TestFunctionFamily f;
  f.poly_degree = 0;
  f.phase_max = 0.0;
  f.decay_min = 0.75;
  f.decay_max = 1.5;
  f.seed = seed;
  return f;
}

Grid inequality_grid() { return Grid::make(64, 2001, 40.0, 1.0); }

double weighted_norm_any(const Field& f, double p) {
  const Grid& g = f.grid();
  const double dx = g.dx(), dy = g.dy();
  std::vector<double> w(g.n_y);
  for (int j = 0; j < g.n_y; ++j) w[j] = std::pow(1.0 + g.y(j), 2.0 * p) * ((j == 0 || j == g.n_y - 1) ? 0.5 : 1.0);
  double acc = 0.0;
  for (int i = 0; i < g.n_x; ++i)
    for (int j = 0; j < g.n_y; ++j) acc += w[j] * f(i, j) * f(i, j);
  return std::sqrt(acc * dx * dy);
}

namespace {

/// Relative size of the top row: <Y>^p ||f(., Y)||_{L2(T)} / ||f||.
double relative_tail(const Field& f, double p) {
  const Grid& g = f.grid();
  double row = 0.0;
  for (int i = 0; i < g.n_x; ++i) row += f(i, g.n_y - 1) * f(i, g.n_y - 1);
  const double n = weighted_norm_any(f, p);
  return n > 0.0 ? std::pow(1.0 + g.y_max, p) * std::sqrt(row * g.dx()) / n : 0.0;
}

double wall_l2(const Field& f) {
  double acc = 0.0;
  for (int i = 0; i < f.grid().n_x; ++i) acc += f(i, 0) * f(i, 0);
  return std::sqrt(acc * f.grid().dx());
}

double sup_weighted(const Field& f, double p) {
  const Grid& g = f.grid();
  double m = 0.0;
  for (int i = 0; i < g.n_x; ++i)
    for (int j = 0; j < g.n_y; ++j) m = std::max(m, std::pow(1.0 + g.y(j), p) * std::abs(f(i, j)));
  return m;
}

/// One-sided check LHS <= RHS (1 + slack) accumulated over samples.
class Tally {
 public:
  Tally(std::string name, std::uint64_t seed) { r_.name = std::move(name), r_.seed = seed; }
  void add(double lhs, double rhs, double slack, int sample, const std::string& witness) {
    ++r_.samples;
    const double ratio = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? INFINITY : 0.0);
    r_.slack = std::max(r_.slack, slack);
    if (ratio > r_.worst_ratio || r_.samples == 1) {
      r_.worst_ratio = ratio;
      r_.witness = "sample " + std::to_string(sample) + ": " + witness;
    }
    if (ratio > 1.0 + slack) violated_ = true;
  }
  InequalityResult finish() {
    r_.pass = !violated_ && r_.samples > 0;
    return r_;
  }

 private:
  InequalityResult r_;
  bool violated_ = false;
};

}  // namespace

std::vector<InequalityResult> check_trace_inequality(const TestFunctionFamily& family, int n_samples) {
  const Grid grid = inequality_grid();
  std::mt19937_64 rng(family.seed);
  Tally e1("e1", family.seed), e2("e2", family.seed);
  for (int s = 0; s < n_samples; ++s) {
    const TestFunction f = family.draw(rng), g = family.draw(rng);
    const Field F = f.sample(grid), Fy = f.sample(grid, 0, 1);
    const Field G = g.sample(grid), Gy = g.sample(grid, 0, 1);
    double wall = 0.0;
    for (int i = 0; i < grid.n_x; ++i) wall += F(i, 0) * G(i, 0);
    wall = std::abs(wall * grid.dx());
    const double nf = weighted_norm_any(F, 0), nfy = weighted_norm_any(Fy, 0);
    const double ng = weighted_norm_any(G, 0), ngy = weighted_norm_any(Gy, 0);
    const double tail = relative_tail(F, 0) + relative_tail(G, 0);
    e1.add(wall, nfy * ng + nf * ngy, 1e-3 + tail, s, "f = " + f.describe() + ", g = " + g.describe());
    e2.add(wall_l2(F), std::sqrt(2.0) * std::sqrt(nf * nfy), 1e-3 + relative_tail(F, 0), s, "f = " + f.describe());
  }

  // equality case of (e2): |ratio - 1| <= 1e-3 for any a(x)
  InequalityResult eq{"e2_equality", 0, 0.0, 1e-3, true, 0.0, 0.0, "", family.seed};
  for (int s = 0; s < n_samples; ++s) {
    TestFunction a = family.draw(rng);
    a.profile = PolyExp({1.0}, 1.0);
    const double r = trace_saturation_ratio(a);
    ++eq.samples;
    if (std::abs(r - 1.0) > std::abs(eq.worst_ratio - 1.0) || s == 0) {
      eq.worst_ratio = r;
      eq.witness = "sample " + std::to_string(s) + ": f = " + a.describe();
    }
  }
  eq.pass = std::abs(eq.worst_ratio - 1.0) <= 1e-3;
  return {e1.finish(), e2.finish(), eq};
}

double trace_saturation_ratio(const TestFunction& f) {
  const Grid grid = inequality_grid();
  const Field F = f.sample(grid), Fy = f.sample(grid, 0, 1);
  const double rhs = std::sqrt(2.0) * std::sqrt(weighted_norm_any(F, 0) * weighted_norm_any(Fy, 0));
  return rhs > 0.0 ? wall_l2(F) / rhs : 1.0;
}

std::vector<InequalityResult> check_hardy(const TestFunctionFamily& family, int n_samples,
                                          const std::vector<double>& lambdas) {
  const Grid grid = inequality_grid();
  std::mt19937_64 rng(family.seed + 1);
  std::vector<Tally> l2, sup;
  auto tag = [](const char* e, double lam) {
    char b[32];
    std::snprintf(b, sizeof b, "%s(lambda=%g)", e, lam);
    return std::string(b);
  };
  for (double lam : lambdas) {
    l2.emplace_back(tag("e4", lam), family.seed);
    sup.emplace_back(tag("e5", lam), family.seed);
  }
  Tally e7("e7", family.seed);
  const double Y = grid.y_max;
  for (int s = 0; s < n_samples; ++s) {
    const TestFunction f = family.draw(rng);
    const Field F = f.sample(grid), A = f.sample_antiderivative(grid);
    // beyond y_max the antiderivative is its limit up to e^{-a y_max}, so
    // int_Y^inf <y>^{-2 lambda} A^2 has a closed form
    double limit2 = 0.0;
    for (int i = 0; i < grid.n_x; ++i) limit2 += std::pow(f.antiderivative_limit(grid.x(i)), 2);
    limit2 *= grid.dx();
    auto lhs_l2 = [&](double lam) {
      const double q = weighted_norm_any(A, -lam);
      const double tail = limit2 * std::pow(1.0 + Y, 1.0 - 2.0 * lam) / (2.0 * lam - 1.0);
      return std::sqrt(q * q + tail);
    };
    const std::string w = "f = " + f.describe();
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
      const double lam = lambdas[k];
      l2[k].add(lhs_l2(lam), 2.0 / (2.0 * lam - 1.0) * weighted_norm_any(F, 1.0 - lam),
                1e-3 + relative_tail(F, 1.0 - lam), s, w);
      sup[k].add(sup_weighted(A, -lam), sup_weighted(F, 1.0 - lam) / lam, 1e-3, s, w);
    }
    e7.add(lhs_l2(1.0), 2.0 * weighted_norm_any(F, 0.0), 1e-3 + relative_tail(F, 0.0), s, w);
  }
  std::vector<InequalityResult> out;
  for (auto& t : l2) out.push_back(t.finish());
  for (auto& t : sup) out.push_back(t.finish());
  out.push_back(e7.finish());
  return out;
}

namespace {

/// Shared protocol for the estimates with a generic constant: ratio(sample) is the
/// largest LHS / RHS over multi-indices; C is fitted on the first n samples and the
/// next n samples must reproduce it within 25%.
InequalityResult fitted_constant_check(const std::string& name, std::uint64_t seed, int n_samples,
                                       const std::function<std::pair<double, std::string>(int)>& ratio) {
  InequalityResult r;
  r.name = name;
  r.seed = seed;
  r.slack = 0.25;
  double cal = 0.0, held = 0.0;
  std::string held_witness;
  for (int s = 0; s < n_samples; ++s) cal = std::max(cal, ratio(s).first);
  for (int s = n_samples; s < 2 * n_samples; ++s) {
    const auto [v, w] = ratio(s);
    if (v > held || held_witness.empty()) {
      held = std::max(held, v);
      held_witness = "sample " + std::to_string(s) + ": " + w;
    }
  }
  r.samples = 2 * n_samples;
  r.fitted_constant = cal;
  r.holdout_constant = held;
  r.worst_ratio = cal > 0.0 ? held / cal : 0.0;
  r.witness = held_witness;
  r.pass = n_samples > 0 && cal > 0.0 && std::isfinite(cal) && std::abs(r.worst_ratio - 1.0) <= 0.25;
  return r;
}

}  // namespace

namespace {

/// X(x) Y(y) on the inequality grid; products stay separable and the weighted
/// norm factors into an x sum times a y trapezoid.
struct Separable {
  std::vector<double> xs, ys;
};

Separable separable(const TestFunction& f, const Grid& grid, int nx, int ny, bool antiderivative = false) {
  Separable s{x_values(f, grid, nx), std::vector<double>(grid.n_y)};
  PolyExp p = f.profile;
  for (int d = 0; d < ny; ++d) p = p.derivative();
  for (int j = 0; j < grid.n_y; ++j) s.ys[j] = antiderivative ? f.profile.integral(grid.y(j)) : p.eval(grid.y(j));
  return s;
}

double separable_norm(const Grid& grid, const Separable& a, const Separable* b, double p) {
  double sx = 0.0, sy = 0.0;
  for (int i = 0; i < grid.n_x; ++i) {
    const double v = b ? a.xs[i] * b->xs[i] : a.xs[i];
    sx += v * v;
  }
  for (int j = 0; j < grid.n_y; ++j) {
    const double v = b ? a.ys[j] * b->ys[j] : a.ys[j];
    const double w = (j == 0 || j == grid.n_y - 1) ? 0.5 : 1.0;
    sy += w * std::pow(1.0 + grid.y(j), 2.0 * p) * v * v;
  }
  return std::sqrt(sx * grid.dx() * sy * grid.dy());
}

/// all d_x^a d_y^k f with a + k <= m, indexed [a][k]
std::vector<std::vector<Separable>> derivative_table(const TestFunction& f, const Grid& grid, int m) {
  std::vector<std::vector<Separable>> t(m + 1);
  for (int a = 0; a <= m; ++a)
    for (int k = 0; a + k <= m; ++k) t[a].push_back(separable(f, grid, a, k));
  return t;
}

double sobolev_table(const Grid& grid, const std::vector<std::vector<Separable>>& t, double l) {
  double acc = 0.0;
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t k = 0; k < t[a].size(); ++k) {
      const double n = separable_norm(grid, t[a][k], nullptr, static_cast<double>(k) + l);
      acc += n * n;
    }
  return std::sqrt(acc);
}

}  // namespace

InequalityResult check_product_estimate(const TestFunctionFamily& family, int n_samples, int m, double l1,
                                        double l2) {
  const Grid grid = inequality_grid();
  std::mt19937_64 rng(family.seed + 2);
  auto ratio = [&](int) {
    const TestFunction f = family.draw(rng), g = family.draw(rng);
    const auto tf = derivative_table(f, grid, m), tg = derivative_table(g, grid, m);
    const double rhs = sobolev_table(grid, tf, l1) * sobolev_table(grid, tg, l2);
    double worst = 0.0;
    for (int a = 0; a <= m; ++a)
      for (int k = 0; a + k <= m; ++k)
        for (int b = 0; a + k + b <= m; ++b)
          for (int kt = 0; a + k + b + kt <= m; ++kt)
            worst = std::max(worst, separable_norm(grid, tf[a][k], &tg[b][kt], l1 + l2 + k + kt) / rhs);
    char lw[64];
    std::snprintf(lw, sizeof lw, ", l1 = %.4g, l2 = %.4g", l1, l2);
    return std::make_pair(worst, "f = " + f.describe() + ", g = " + g.describe() + lw);
  };
  return fitted_constant_check("e3", family.seed, n_samples, ratio);
}

InequalityResult check_antiderivative_product(const TestFunctionFamily& family, int n_samples, double lambda,
                                              double l) {
  const Grid grid = inequality_grid();
  std::mt19937_64 rng(family.seed + 3);
  const int m = 3;
  auto ratio = [&](int) {
    const TestFunction g = family.draw(rng), h = family.draw(rng);
    const auto tg = derivative_table(g, grid, m), th = derivative_table(h, grid, m);
    const double rhs = sobolev_table(grid, tg, l + lambda) * sobolev_table(grid, th, 1.0 - lambda);
    double worst = 0.0;
    for (int a = 0; a <= m; ++a)
      for (int k = 0; a + k <= m; ++k)
        for (int b = 0; a + k + b <= m; ++b) {
          const Separable anti = separable(h, grid, b, 0, true);
          worst = std::max(worst, separable_norm(grid, tg[a][k], &anti, l + k) / rhs);
        }
    char lw[32];
    std::snprintf(lw, sizeof lw, ", l = %.4g", l);
    return std::make_pair(worst, "g = " + g.describe() + ", h = " + h.describe() + lw);
  };
  char name[32];
  std::snprintf(name, sizeof name, "e6(lambda=%g)", lambda);
  return fitted_constant_check(lambda == 1.0 ? "e8" : name, family.seed, n_samples, ratio);
}

std::vector<InequalityResult> run_inequality_suite(std::uint64_t seed, int n_samples) {
  TestFunctionFamily family;
  family.seed = seed;
  std::vector<InequalityResult> out = check_trace_inequality(family, n_samples);
  for (auto& r : check_hardy(family, n_samples)) out.push_back(std::move(r));
  const TestFunctionFamily narrow = TestFunctionFamily::calibration(seed);
  out.push_back(check_product_estimate(narrow, n_samples));
  out.push_back(check_antiderivative_product(narrow, n_samples, 0.6));
  out.push_back(check_antiderivative_product(narrow, n_samples, 1.0));
  return out;
}

}  // namespace mhdlab
