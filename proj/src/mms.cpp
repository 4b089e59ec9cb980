#include "mhdlab/mms.hpp"

#include <cmath>
#include <limits>

#include "mhdlab/norms.hpp"
#include "mhdlab/run.hpp"

namespace mhdlab {

double Trig::eval(double x, int derivative) const {
  const double cs = std::cos(x), sn = std::sin(x);
  switch (derivative % 4) {
    case 0: return (derivative == 0 ? a : 0.0) + b * cs + c * sn;
    case 1: return -b * sn + c * cs;
    case 2: return -b * cs - c * sn;
    default: return b * sn - c * cs;
  }
}

ManufacturedSolution ManufacturedSolution::standard(double y_max, bool unsteady) {
  const double Y = y_max;
  ManufacturedSolution m;
  m.xu = {0.0, 0.0, 0.5};
  m.xtheta = {0.3, 0.15, 0.0};
  m.xh = {0.0, 0.4, 0.0};
  m.yu = PolyExp({0.0, 1.0, -1.0 / Y}, 1.0);
  m.ytheta = PolyExp({0.0, 0.0, 1.0, -1.0 / Y}, 1.0);
  m.yh = PolyExp({1.0, 1.0, -1.0 / (Y * Y), -1.0 / (Y * Y)}, 1.0);
  m.time_amplitude = unsteady ? 0.3 : 0.0;
  return m;
}

double ManufacturedSolution::time_factor(double t, int derivative) const {
  if (derivative == 0) return 1.0 + time_amplitude * std::sin(time_frequency * t);
  return time_amplitude * time_frequency * std::cos(time_frequency * t);
}

HomogeneousState ManufacturedSolution::sample(const Grid& grid, double t) const {
  const double T = time_factor(t);
  auto field = [&](const Trig& X, const PolyExp& Yp) {
    return Field::sample(grid, [&](double x, double y) { return T * X.eval(x) * Yp.eval(y); });
  };
  return HomogeneousState::from_prognostic(field(xu, yu), field(xtheta, ytheta), field(xh, yh));
}

Tendency ManufacturedSolution::analytic_forcing(const Grid& grid, const OuterFlow& flow, const CutoffPhi& phi,
                                                const SolverConfig& cfg, double t) const {
  const double T = time_factor(t), Tt = time_factor(t, 1);
  const PhiProfile prof(phi, grid);
  const std::vector<FlowPoint> fp = flow_slice(flow, grid, t);
  const double mu = cfg.physics.mu;
  Tendency out = Tendency::zero(grid);
  for (int i = 0; i < grid.n_x; ++i) {
    const double x = grid.x(i);
    const double Xu = xu.eval(x), Xu1 = xu.eval(x, 1), Xu2 = xu.eval(x, 2);
    const double Xt = xtheta.eval(x), Xt1 = xtheta.eval(x, 1), Xt2 = xtheta.eval(x, 2);
    const double Xh = xh.eval(x), Xh1 = xh.eval(x, 1), Xh2 = xh.eval(x, 2);
    const FlowPoint& f = fp[i];
    for (int j = 0; j < grid.n_y; ++j) {
      const double y = grid.y(j);
      const double Yu = yu.eval(y), Yu1 = yu.eval(y, 1), Yu2 = yu.eval(y, 2);
      const double Yt = ytheta.eval(y), Yt1 = ytheta.eval(y, 1), Yt2 = ytheta.eval(y, 2);
      const double Yh = yh.eval(y), Yh1 = yh.eval(y, 1), Yh2 = yh.eval(y, 2);
      NodeValues n;
      n.u = T * Xu * Yu;
      n.u_x = T * Xu1 * Yu;
      n.u_xx = T * Xu2 * Yu;
      n.u_y = T * Xu * Yu1;
      const double u_yy = T * Xu * Yu2;
      n.theta = T * Xt * Yt;
      n.theta_x = T * Xt1 * Yt;
      n.theta_xx = T * Xt2 * Yt;
      n.theta_y = T * Xt * Yt1;
      n.theta_yy = T * Xt * Yt2;
      n.h = T * Xh * Yh;
      n.h_x = T * Xh1 * Yh;
      n.h_xx = T * Xh2 * Yh;
      n.h_y = T * Xh * Yh1;
      n.h_yy = T * Xh * Yh2;
      n.v = -T * Xu1 * yu.integral(y);
      n.g = -T * Xh1 * yh.integral(y);
      const double a = n.theta + f.Theta * prof.d1[j] + 1.0;
      n.visc_u = mu * ((n.theta_y + f.Theta * prof.d2[j]) * n.u_y + a * u_yy);
      const std::array<double, 4> ph{prof.phi[j], prof.d1[j], prof.d2[j], prof.d3[j]};
      const NodeTendency d = rhs_point(n, f, ph, cfg.physics, cfg.epsilon, {0.0, 0.0, 0.0});
      out.du(i, j) = Tt * Xu * Yu - d.du;
      out.dtheta(i, j) = Tt * Xt * Yt - d.dtheta;
      out.dh(i, j) = Tt * Xh * Yh - d.dh;
    }
  }
  return out;
}

Tendency ManufacturedSolution::discrete_forcing(const Grid& grid, const OuterFlow& flow, const CutoffPhi& phi,
                                                const SolverConfig& cfg, double t) const {
  const HomogeneousState s = sample(grid, t);
  const double ratio = time_factor(t, 1) / time_factor(t);
  Tendency out{ratio * s.u, ratio * s.theta, ratio * s.h};
  out.axpy(-1.0, rhs_regularized(s, flow, phi, cfg, {}, t));
  return out;
}

MmsSpec MmsSpec::standard() {
  MmsSpec s;
  s.flow = flow_presets::traveling_pair(0.5, 1.0, 0.2, 1.0, 0.2, 1.0);
  s.cfg.epsilon = 0.01;
  s.cfg.dt = 0.005;
  s.cfg.t_end = 1.0;
  s.cfg.check_magnetic_floor = false;
  s.cfg.temperature_tolerance = 1e30;
  s.cfg.monitor_every = 1000000;
  return s;
}

void fill_orders(std::vector<ConvergenceLevel>& levels) {
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (k == 0) {
      levels[k].order = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    levels[k].order = std::log(levels[k - 1].error / levels[k].error) /
                      std::log(levels[k - 1].parameter / levels[k].parameter);
  }
}

namespace {

double state_error(const HomogeneousState& a, const HomogeneousState& b) {
  const Field d[] = {a.u - b.u, a.theta - b.theta, a.h - b.h};
  return weighted_l2_norm(d, 0.0);
}

/// a restricted to the nodes of the coarser grid (n_x a multiple of coarse.n_x).
HomogeneousState restrict_x(const HomogeneousState& a, const Grid& coarse) {
  const int stride = a.grid().n_x / coarse.n_x;
  auto pick = [&](const Field& f) {
    Field out(coarse);
    for (int i = 0; i < coarse.n_x; ++i)
      for (int j = 0; j < coarse.n_y; ++j) out(i, j) = f(i * stride, j);
    return out;
  };
  return HomogeneousState::from_prognostic(pick(a.u), pick(a.theta), pick(a.h));
}

RunResult forced_run(const ManufacturedSolution& m, const Grid& grid, const MmsSpec& spec, const SolverConfig& cfg,
                     bool analytic, const RunOptions::Observer& observer = {}) {
  const CutoffPhi phi(spec.r0);
  RunOptions opt;
  opt.check_hypotheses = false;
  opt.use_correctors = false;
  opt.monitors = false;
  opt.observer = observer;
  if (analytic)
    opt.forcing = [&, grid](double t) { return m.analytic_forcing(grid, spec.flow, phi, cfg, t); };
  else
    opt.forcing = [&, grid](double t) { return m.discrete_forcing(grid, spec.flow, phi, cfg, t); };
  return run(m.sample(grid, 0.0), spec.flow, phi, cfg, opt);
}

}  // namespace

MmsReport mms_convergence(const MmsSpec& spec) {
  MmsReport rep;
  const SolverConfig& cfg = spec.cfg;
  auto note = [&](const std::string& what, const RunResult& r) {
    if (!r.completed() && rep.failure.empty()) rep.failure = what + ": " + r.status + " " + r.message;
  };

  // dy: analytic forcing of a steady manufactured state
  const ManufacturedSolution steady = ManufacturedSolution::standard(spec.y_max, false);
  for (int ny : spec.n_y_ladder) {
    const Grid g = Grid::make(spec.n_x, ny, spec.y_max, spec.r0);
    const HomogeneousState exact = steady.sample(g, 0.0);
    const long half = std::lround(0.5 * cfg.t_end / cfg.dt);
    double mid = std::numeric_limits<double>::quiet_NaN();
    const RunResult r = forced_run(steady, g, spec, cfg, true, [&](int step, double, const HomogeneousState& s) {
      if (step == half) mid = state_error(s, exact);
    });
    note("dy n_y=" + std::to_string(ny), r);
    const double e = state_error(r.final_state, exact);
    rep.dy.push_back({g.dy(), e, 0.0});
    if (std::isfinite(mid) && e > 0.0) rep.steady_drift = std::max(rep.steady_drift, std::abs(e - mid) / e);
  }
  fill_orders(rep.dy);

  // dx: successive differences at fixed n_y isolate the x truncation error
  std::vector<HomogeneousState> finals;
  for (int nx : spec.n_x_ladder) {
    const Grid g = Grid::make(nx, spec.n_y_for_x, spec.y_max, spec.r0);
    const RunResult r = forced_run(steady, g, spec, cfg, true);
    note("dx n_x=" + std::to_string(nx), r);
    finals.push_back(r.final_state);
  }
  for (std::size_t k = 0; k + 1 < finals.size(); ++k) {
    const Grid& coarse = finals[k].grid();
    const double e = state_error(finals[k], restrict_x(finals[k + 1], coarse));
    rep.dx.push_back({coarse.dx(), e, 0.0});
  }
  fill_orders(rep.dx);

  // dt: discrete forcing makes the sampled unsteady state the exact semi-discrete solution
  const ManufacturedSolution unsteady = ManufacturedSolution::standard(spec.y_max, true);
  const Grid gt = Grid::make(spec.n_x_for_t, spec.n_y_for_t, spec.y_max, spec.r0);
  for (double dt : spec.dt_ladder) {
    SolverConfig c = cfg;
    c.dt = dt;
    c.t_end = spec.t_end_for_t;
    const RunResult r = forced_run(unsteady, gt, spec, c, false);
    note("dt=" + std::to_string(dt), r);
    rep.dt.push_back({dt, state_error(r.final_state, unsteady.sample(gt, r.t_final)), 0.0});
  }
  fill_orders(rep.dt);
  return rep;
}

}  // namespace mhdlab
