#include "mhdlab/outer_flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mhdlab {

CutoffPhi::CutoffPhi(double r0) : r0_(r0) {
  if (!(r0 > 0.0)) throw std::invalid_argument("CutoffPhi: r0 must be positive");
}

double CutoffPhi::eval(double y, int derivative) const {
  if (derivative < 0 || derivative > 3) throw std::invalid_argument("CutoffPhi: derivative order must be in [0, 3]");
  return eval_all(y)[derivative];
}

std::array<double, 4> CutoffPhi::eval_all(double y) const {
  if (y <= r0_) return {0.0, 0.0, 0.0, 0.0};
  if (y >= 2.0 * r0_) return {y, 1.0, 0.0, 0.0};
  const double s = (y - r0_) / r0_;
  const auto& c = kBlend;
  const double s2 = s * s;
  const double s3 = s2 * s;
  // p(s) = s^4 (c0 + c1 s + c2 s^2 + c3 s^3); phi = r0 p, phi' = p', phi'' = p''/r0, phi''' = p'''/r0^2
  const double p = s3 * s * (c[0] + s * (c[1] + s * (c[2] + s * c[3])));
  const double p1 = s3 * (4.0 * c[0] + s * (5.0 * c[1] + s * (6.0 * c[2] + s * 7.0 * c[3])));
  const double p2 = s2 * (12.0 * c[0] + s * (20.0 * c[1] + s * (30.0 * c[2] + s * 42.0 * c[3])));
  const double p3 = s * (24.0 * c[0] + s * (60.0 * c[1] + s * (120.0 * c[2] + s * 210.0 * c[3])));
  return {r0_ * p, p1, p2 / r0_, p3 / (r0_ * r0_)};
}

TraceFunction TraceFunction::constant(double c) {
  TraceFunction f;
  f.offset_ = c;
  return f;
}

TraceFunction TraceFunction::traveling(double amplitude, double k, double speed, double offset, double phase) {
  TraceFunction f;
  f.offset_ = offset;
  if (amplitude != 0.0) f.add_mode({{amplitude, 0.0, 0.0, 0.0}, k, k * speed, phase});
  return f;
}

TraceFunction& TraceFunction::add_mode(const Mode& mode) {
  modes_.push_back(mode);
  return *this;
}

TraceFunction& TraceFunction::set_offset(double c) {
  offset_ = c;
  return *this;
}

TraceFunction& TraceFunction::scale(double s) {
  offset_ *= s;
  for (Mode& m : modes_)
    for (double& c : m.poly) c *= s;
  return *this;
}

namespace {

// sin(a + n pi/2)
double shifted_sin(double a, int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return std::sin(a);
    case 1: return std::cos(a);
    case 2: return -std::sin(a);
    default: return -std::cos(a);
  }
}

double poly_derivative(const std::array<double, 4>& c, double t, int j) {
  double out = 0.0;
  for (int n = j; n < 4; ++n) {
    double falling = 1.0;
    for (int r = 0; r < j; ++r) falling *= (n - r);
    out += c[n] * falling * std::pow(t, n - j);
  }
  return out;
}

double binomial(int n, int k) {
  double b = 1.0;
  for (int r = 1; r <= k; ++r) b = b * (n - k + r) / r;
  return b;
}

}  // namespace

double TraceFunction::eval(double t, double x, int nt, int nx) const {
  if (nt < 0 || nx < 0) throw std::invalid_argument("TraceFunction: negative derivative order");
  double out = (nt == 0 && nx == 0) ? offset_ : 0.0;
  for (const Mode& m : modes_) {
    const double arg = m.wavenumber * x - m.frequency * t + m.phase;
    const double kx = std::pow(m.wavenumber, nx);
    double acc = 0.0;
    for (int j = 0; j <= nt; ++j) {
      const double pj = poly_derivative(m.poly, t, j);
      if (pj == 0.0) continue;
      acc += binomial(nt, j) * pj * std::pow(-m.frequency, nt - j) * shifted_sin(arg, nt - j + nx);
    }
    out += kx * acc;
  }
  return out;
}

OuterFlow& OuterFlow::scale(double s) {
  U.scale(s);
  Theta.scale(s);
  H.scale(s);
  P.scale(s);
  return *this;
}

FlowPoint eval_flow(const OuterFlow& flow, double t, double x) {
  FlowPoint p;
  p.U = flow.U.eval(t, x);
  p.U_t = flow.U.eval(t, x, 1, 0);
  p.U_x = flow.U.eval(t, x, 0, 1);
  p.Theta = flow.Theta.eval(t, x);
  p.Theta_t = flow.Theta.eval(t, x, 1, 0);
  p.Theta_x = flow.Theta.eval(t, x, 0, 1);
  p.H = flow.H.eval(t, x);
  p.H_t = flow.H.eval(t, x, 1, 0);
  p.H_x = flow.H.eval(t, x, 0, 1);
  p.P_x = flow.P.eval(t, x, 0, 1);
  return p;
}

namespace flow_presets {

OuterFlow zero() { return {}; }

OuterFlow constant(double U, double Theta, double H, double P) {
  return {TraceFunction::constant(U), TraceFunction::constant(Theta), TraceFunction::constant(H),
          TraceFunction::constant(P)};
}

OuterFlow traveling_pair(double U0, double H0, double a, double T0, double b, double k) {
  OuterFlow f;
  f.U = TraceFunction::constant(U0);
  f.H = TraceFunction::traveling(a, k, U0, H0);
  f.Theta = TraceFunction::traveling(b, k, U0, T0);
  // H^2/2 = H0^2/2 + a^2/4 + H0 a sin(arg) - (a^2/4) cos(2 arg)
  f.P = TraceFunction::traveling(H0 * a, k, U0, 0.5 * H0 * H0 + 0.25 * a * a);
  if (a != 0.0) f.P.add_mode({{-0.25 * a * a, 0.0, 0.0, 0.0}, 2.0 * k, 2.0 * k * U0, 0.5 * std::numbers::pi});
  return f;
}

OuterFlow steady_alfven(double c, double a, double k, double Theta0, double P0) {
  OuterFlow f;
  f.U = TraceFunction::traveling(a, k, 0.0, c);
  f.H = f.U;
  f.Theta = TraceFunction::constant(Theta0);
  f.P = TraceFunction::constant(P0);
  return f;
}

}  // namespace flow_presets

MatchingResiduals matching_residuals(const OuterFlow& flow, double t, std::span<const double> x_samples) {
  MatchingResiduals r;
  for (double x : x_samples) {
    const FlowPoint p = eval_flow(flow, t, x);
    r.momentum.push_back(p.U_t + p.U * p.U_x + p.P_x - p.H * p.H_x);
    r.temperature.push_back(p.Theta_t + p.U * p.Theta_x);
    r.induction.push_back(p.H_t + p.U * p.H_x - p.H * p.U_x);
  }
  return r;
}

double m0_estimate(const OuterFlow& flow, std::span<const double> t_samples, int max_order, int n_quad) {
  if (max_order < 0) throw std::invalid_argument("m0_estimate: max_order must be >= 0");
  if (n_quad < 1) throw std::invalid_argument("m0_estimate: n_quad must be >= 1");
  const double dx = 2.0 * std::numbers::pi / n_quad;
  const std::array<const TraceFunction*, 4> traces{&flow.U, &flow.Theta, &flow.H, &flow.P};
  double best = 0.0;
  for (double t : t_samples) {
    double total = 0.0;
    for (int i = 0; i <= max_order; ++i) {
      // ||d_t^i (U,Theta,H,P)||_{H^{max_order-i}(T)}
      double sq = 0.0;
      for (int s = 0; s <= max_order - i; ++s)
        for (const TraceFunction* f : traces)
          for (int q = 0; q < n_quad; ++q) {
            const double v = f->eval(t, q * dx, i, s);
            sq += v * v * dx;
          }
      total += std::sqrt(sq);
    }
    best = std::max(best, total);
  }
  return best;
}

double min_theta(const OuterFlow& flow, std::span<const double> t_samples, int n_quad) {
  const double dx = 2.0 * std::numbers::pi / n_quad;
  double m = INFINITY;
  for (double t : t_samples)
    for (int q = 0; q < n_quad; ++q) m = std::min(m, flow.Theta.eval(t, q * dx));
  return m;
}

}  // namespace mhdlab
