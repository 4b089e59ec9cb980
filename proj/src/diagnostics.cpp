#include "mhdlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "mhdlab/norms.hpp"
#include "mhdlab/operators.hpp"

namespace mhdlab {

Field stream_function(const Field& h) { return inv_dy(h); }

namespace {

Field add_trace_profile(const Field& f, const OuterFlow& flow, const TraceFunction OuterFlow::*trace,
                        const CutoffPhi& phi, double t) {
  const Grid& g = f.grid();
  const PhiProfile prof(phi, g);
  Field out(g);
  for (int i = 0; i < g.n_x; ++i) {
    const double c = (flow.*trace).eval(t, g.x(i));
    for (int j = 0; j < g.n_y; ++j) out(i, j) = f(i, j) + c * prof.d1[j];
  }
  return out;
}

Field tangential(const Field& f, int nx) {
  if (nx == 0) return f;
  if (nx == 1) return ddx(f);
  return ddx(f, 2);
}

}  // namespace

Field magnetic_total(const HomogeneousState& s, const OuterFlow& flow, const CutoffPhi& phi, double t) {
  return add_trace_profile(s.h, flow, &OuterFlow::H, phi, t);
}

Field temperature_total(const HomogeneousState& s, const OuterFlow& flow, const CutoffPhi& phi, double t) {
  return add_trace_profile(s.theta, flow, &OuterFlow::Theta, phi, t);
}

EtaCoefficients eta_coefficients(const HomogeneousState& s, const OuterFlow& flow, const CutoffPhi& phi,
                                 const SolverConfig& cfg, double t) {
  const Grid& g = s.grid();
  EtaCoefficients e{Field(g), Field(g), Field(g), magnetic_total(s, flow, phi, t)};
  std::size_t worst = 0;
  for (std::size_t k = 1; k < e.denominator.size(); ++k)
    if (e.denominator[k] < e.denominator[worst]) worst = k;
  const double lowest = e.denominator[worst];
  if (!(lowest >= cfg.delta0)) {
    const int i = static_cast<int>(worst / static_cast<std::size_t>(g.n_y));
    const int j = static_cast<int>(worst % static_cast<std::size_t>(g.n_y));
    throw MagneticFloorBreach("h + H phi' = " + std::to_string(lowest) + " below delta0 at x = " +
                                  std::to_string(g.x(i)) + ", y = " + std::to_string(g.y(j)),
                              g.x(i), g.y(j), lowest);
  }
  const PhiProfile prof(phi, g);
  const Field u_y = ddy(s.u), th_y = ddy(s.theta), h_y = ddy(s.h);
  for (int i = 0; i < g.n_x; ++i) {
    const FlowPoint f = eval_flow(flow, t, g.x(i));
    for (int j = 0; j < g.n_y; ++j) {
      const double d = e.denominator(i, j);
      e.eta1(i, j) = (u_y(i, j) + f.U * prof.d2[j]) / d;
      e.eta2(i, j) = (th_y(i, j) + f.Theta * prof.d2[j]) / d;
      e.eta3(i, j) = (h_y(i, j) + f.H * prof.d2[j]) / d;
    }
  }
  return e;
}

CancellationQuantities cancellation_quantities(const HomogeneousState& s, const OuterFlow& flow,
                                               const CutoffPhi& phi, const SolverConfig& cfg, double t,
                                               TangentialIndex beta, const CorrectorSet& correctors) {
  if (beta[0] < 0 || beta[1] < 0 || beta[0] + beta[1] > 2)
    throw std::invalid_argument("cancellation_quantities: need |beta| <= 2");
  if (beta[0] > 1) throw std::invalid_argument("cancellation_quantities: second time derivatives are unsupported");
  CancellationQuantities q{eta_coefficients(s, flow, phi, cfg, t), stream_function(s.h), {}, {}, {}, {}, {}, {}, {}};
  if (beta[0] == 1) {
    const Tendency d = rhs_regularized(s, flow, phi, cfg, correctors, t);
    q.du = tangential(d.du, beta[1]);
    q.dtheta = tangential(d.dtheta, beta[1]);
    q.dh = tangential(d.dh, beta[1]);
  } else {
    q.du = tangential(s.u, beta[1]);
    q.dtheta = tangential(s.theta, beta[1]);
    q.dh = tangential(s.h, beta[1]);
  }
  q.dpsi = inv_dy(q.dh);
  q.u_beta = q.du - hadamard(q.eta.eta1, q.dpsi);
  q.theta_beta = q.dtheta - hadamard(q.eta.eta2, q.dpsi);
  q.h_beta = q.dh - hadamard(q.eta.eta3, q.dpsi);
  return q;
}

Field rebuild_tangential_psi(const CancellationQuantities& q) {
  const Field& d = q.eta.denominator;
  Field ratio(d.grid());
  for (std::size_t k = 0; k < d.size(); ++k) ratio[k] = q.h_beta[k] / d[k];
  return hadamard(d, inv_dy(ratio));
}

SupBounds sup_bounds(const HomogeneousState& s, double l) {
  SupBounds b;
  for (const Field* f : {&s.u, &s.theta, &s.h}) {
    b.dy1 = std::max(b.dy1, weighted_sup(ddy(*f), l + 1.0));
    b.dy2 = std::max(b.dy2, weighted_sup(ddy(*f, 2), l + 1.0));
  }
  return b;
}

double trace_sup(const OuterFlow& flow, const Grid& grid, double t) {
  double m = 0.0;
  for (int i = 0; i < grid.n_x; ++i) {
    const double x = grid.x(i);
    m = std::max({m, std::abs(flow.U.eval(t, x)), std::abs(flow.Theta.eval(t, x)), std::abs(flow.H.eval(t, x))});
  }
  return m;
}

double m_of_t(const HomogeneousState& s, const OuterFlow& flow, const SolverConfig& cfg, double t) {
  const SupBounds b = sup_bounds(s, cfg.weight_l);
  const double w = 2.0 / cfg.delta0;
  return w * (trace_sup(flow, s.grid(), t) + b.dy1) + w * (b.dy2 + 1.0);
}

EquivalenceCheck norm_equivalence_check(const HomogeneousState& s, const OuterFlow& flow, const CutoffPhi& phi,
                                        const SolverConfig& cfg, double t, TangentialIndex beta,
                                        const CorrectorSet& correctors, double tolerance) {
  EquivalenceCheck out;
  out.m = m_of_t(s, flow, cfg, t);
  const double l = cfg.weight_l;

  // a vanishing d^beta leaves nothing to compare, and eta need not exist
  const Tendency raw = [&] {
    if (beta[0] == 1) return rhs_regularized(s, flow, phi, cfg, correctors, t);
    return Tendency{s.u, s.theta, s.h};
  }();
  const Field raw_x[] = {tangential(raw.du, beta[1]), tangential(raw.dtheta, beta[1]), tangential(raw.dh, beta[1])};
  if (weighted_l2_norm(raw_x, l) == 0.0) {
    out.trivial = true;
    out.pass = true;
    return out;
  }

  const CancellationQuantities q = cancellation_quantities(s, flow, phi, cfg, t, beta, correctors);
  const Field plain[] = {q.du, q.dtheta, q.dh};
  const Field cancelled[] = {q.u_beta, q.theta_beta, q.h_beta};
  const Field plain_y[] = {ddy(q.du), ddy(q.dtheta), ddy(q.dh)};
  const Field cancelled_y[] = {ddy(q.u_beta), ddy(q.theta_beta), ddy(q.h_beta)};
  out.ratio = weighted_l2_norm(cancelled, l) / weighted_l2_norm(plain, l);
  const double bound = weighted_l2_norm(cancelled_y, l) + out.m * weighted_l2_norm(q.h_beta, l);
  out.gradient_ratio = bound > 0.0 ? weighted_l2_norm(plain_y, l) / bound : 0.0;
  const bool lower = out.ratio >= (1.0 - tolerance) / out.m;
  const bool upper = out.ratio <= (1.0 + tolerance) * out.m;
  const bool grad = out.gradient_ratio <= 1.0 + tolerance;
  out.pass = lower && upper && grad;
  return out;
}

MonitorReport monitor(const HomogeneousState& s, const OuterFlow& flow, const CutoffPhi& phi,
                      const SolverConfig& cfg, double t, const CorrectorSet& correctors) {
  MonitorReport r;
  r.t = t;
  r.min_theta_total = temperature_total(s, flow, phi, t).min();
  r.min_h_total = magnetic_total(s, flow, phi, t).min();
  r.div_u = (ddx(s.u) + ddy(s.v)).max_abs();
  r.div_h = (ddx(s.h) + ddy(s.g)).max_abs();

  const Field fields[] = {s.u, s.theta, s.h};
  TimeDerivativeProvider provider = [&](std::span<const Field> in) {
    const HomogeneousState st = HomogeneousState::from_prognostic(in[0], in[1], in[2]);
    Tendency d = rhs_regularized(st, flow, phi, cfg, correctors, t);
    return std::vector<Field>{std::move(d.du), std::move(d.dtheta), std::move(d.dh)};
  };
  r.norm = weighted_sobolev_norm(fields, {cfg.norm_m, cfg.weight_l, 1}, provider);

  const SupBounds b = sup_bounds(s, cfg.weight_l);
  r.sup_dy1 = b.dy1;
  r.sup_dy2 = b.dy2;
  r.m_of_t = m_of_t(s, flow, cfg, t);
  r.hypothesis_ok = r.min_h_total >= cfg.delta0 && b.dy1 <= 1.0 / cfg.delta0 && b.dy2 <= 1.0 / cfg.delta0;

  try {
    const EquivalenceCheck e = norm_equivalence_check(s, flow, phi, cfg, t, cfg.monitor_beta, correctors);
    r.equiv_ratio = e.ratio;
    r.equiv_gradient_ratio = e.gradient_ratio;
    r.equiv_trivial = e.trivial;
    r.equiv_pass = e.pass;
  } catch (const MagneticFloorBreach&) {
    r.equiv_ratio = r.equiv_gradient_ratio = std::numeric_limits<double>::quiet_NaN();
    r.equiv_pass = false;
  }
  r.flagged = !r.equiv_pass;
  return r;
}

}  // namespace mhdlab
