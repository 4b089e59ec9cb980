#include "mhdlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mhdlab/operators.hpp"
#include "mhdlab/tridiagonal.hpp"

namespace mhdlab {

void SolverConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be positive");
  };
  positive(physics.mu, "mu");
  positive(physics.kappa, "kappa");
  positive(physics.nu, "nu");
  positive(physics.c_v, "c_v");
  positive(delta0, "delta0");
  positive(dt, "dt");
  positive(cfl, "cfl");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw std::invalid_argument("epsilon must be >= 0");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be >= 0");
  if (corrector_order < 0 || corrector_order > 2) throw std::invalid_argument("corrector_order must be in 0..2");
  if (monitor_every < 1) throw std::invalid_argument("monitor_every must be >= 1");
  if (weight_l < 0.0) throw std::invalid_argument("weight_l must be >= 0");
  if (norm_m < 0 || norm_m > 3) throw std::invalid_argument("norm_m must be in 0..3");
  if (monitor_beta[0] < 0 || monitor_beta[0] > 1 || monitor_beta[1] < 0 || monitor_beta[0] + monitor_beta[1] > 2)
    throw std::invalid_argument("monitor_beta must satisfy beta_t <= 1, |beta| <= 2");
  if (!(temperature_tolerance >= 0.0)) throw std::invalid_argument("temperature_tolerance must be >= 0");
}

double SolverConfig::c0() const { return std::min({physics.mu, physics.kappa, physics.nu}); }

Tendency Tendency::zero(const Grid& grid) { return {Field(grid), Field(grid), Field(grid)}; }

Tendency& Tendency::axpy(double s, const Tendency& other) {
  du.axpy(s, other.du);
  dtheta.axpy(s, other.dtheta);
  dh.axpy(s, other.dh);
  return *this;
}

CorrectorSet::Values CorrectorSet::at(double t) const {
  if (empty()) return {};
  const Grid& grid = rt1.front().grid();
  Values out{Field(grid), Field(grid), Field(grid), Field(grid)};
  double coeff = 1.0;  // t^i / i!
  for (std::size_t i = 0; i < rt1.size(); ++i) {
    if (i > 0) coeff *= t / static_cast<double>(i);
    out.r1.axpy(-coeff, rt1[i]);
    out.r2.axpy(-coeff, rt2[i]);
    out.r3.axpy(-coeff, rt3[i]);
    out.r4.axpy(-coeff, rt4[i]);
  }
  return out;
}

NodeTendency rhs_point(const NodeValues& n, const FlowPoint& f, const std::array<double, 4>& phi,
                       const PhysicalConstants& pc, double epsilon, const std::array<double, 3>& corr) {
  const double p0 = phi[0], p1 = phi[1], p2 = phi[2], p3 = phi[3];
  const double mu = pc.mu, kappa = pc.kappa, nu = pc.nu, cv = pc.c_v;
  const SourcePoint r = source_point(f, phi, pc);

  const double u1 = n.u + f.U * p1;
  const double u2 = n.v - f.U_x * p0;
  const double h1 = n.h + f.H * p1;
  const double h2 = n.g - f.H_x * p0;
  const double Up2 = f.U * p2;
  const double Hp2 = f.H * p2;

  NodeTendency out;
  out.du = -(u1 * n.u_x + u2 * n.u_y) + (h1 * n.h_x + h2 * n.h_y) + n.visc_u + epsilon * n.u_xx -
           f.U_x * p1 * n.u - Up2 * n.v + f.H_x * p1 * n.h + Hp2 * n.g + mu * f.U * p3 * n.theta +
           mu * Up2 * n.theta_y + r.r1 + epsilon * corr[0];

  const double uy2 = n.u_y * n.u_y;
  const double heat = mu * n.theta * uy2 + mu * Up2 * Up2 * n.theta + 2.0 * mu * Up2 * n.theta * n.u_y +
                      mu * f.Theta * p1 * uy2 + 2.0 * mu * f.Theta * f.U * p1 * p2 * n.u_y +
                      2.0 * mu * Up2 * n.u_y + mu * uy2 + nu * n.h_y * n.h_y + 2.0 * nu * Hp2 * n.h_y;
  const double cv_dtheta = -cv * (u1 * n.theta_x + u2 * n.theta_y) + kappa * n.theta_yy +
                           epsilon * n.theta_xx - cv * f.Theta_x * p1 * n.u - cv * f.Theta * p2 * n.v + heat +
                           r.r2 + epsilon * corr[1];
  out.dtheta = cv_dtheta / cv;

  out.dh = -(u1 * n.h_x + u2 * n.h_y) + (h1 * n.u_x + h2 * n.u_y) + nu * n.h_yy + epsilon * n.h_xx -
           f.H_x * p1 * n.u - Hp2 * n.v + f.U_x * p1 * n.h + Up2 * n.g + r.r3 + epsilon * corr[2];
  return out;
}

namespace {

void require_finite(const HomogeneousState& s) {
  if (!s.u.all_finite() || !s.theta.all_finite() || !s.h.all_finite() || !s.v.all_finite() || !s.g.all_finite())
    throw NonFiniteField("state contains a non-finite value");
}

/// theta + Theta phi' + 1 at every node.
Field viscosity_factor(const HomogeneousState& s, const std::vector<FlowPoint>& fp, const PhiProfile& prof) {
  const Grid& grid = s.grid();
  Field a(grid);
  for (int i = 0; i < grid.n_x; ++i)
    for (int j = 0; j < grid.n_y; ++j) a(i, j) = s.theta(i, j) + fp[i].Theta * prof.d1[j] + 1.0;
  return a;
}

void require_viscosity(const Field& a) {
  const double m = a.min();
  if (!(m > 0.0)) throw DegenerateViscosity("theta + Theta phi' + 1 reaches " + std::to_string(m));
}

}  // namespace

Tendency rhs_regularized(const HomogeneousState& s, const OuterFlow& flow, const CutoffPhi& phi,
                         const SolverConfig& cfg, const CorrectorSet& correctors, double t) {
  require_finite(s);
  const Grid& grid = s.grid();
  const int nx = grid.n_x, ny = grid.n_y;
  const double dy = grid.dy();
  const double idy2 = 1.0 / (dy * dy);
  const PhiProfile prof(phi, grid);
  const std::vector<FlowPoint> fp = flow_slice(flow, grid, t);
  const Field a = viscosity_factor(s, fp, prof);
  require_viscosity(a);

  const Field u_x = ddx(s.u), u_xx = ddx(s.u, 2), u_y = ddy(s.u);
  const Field th_x = ddx(s.theta), th_xx = ddx(s.theta, 2), th_y = ddy(s.theta);
  const Field h_x = ddx(s.h), h_xx = ddx(s.h, 2), h_y = ddy(s.h);
  const CorrectorSet::Values corr = correctors.at(t);
  const bool has_corr = !correctors.empty();
  const double mu = cfg.physics.mu;

  Tendency out = Tendency::zero(grid);
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      NodeValues n;
      n.u = s.u(i, j);
      n.u_x = u_x(i, j);
      n.u_y = u_y(i, j);
      n.u_xx = u_xx(i, j);
      n.theta = s.theta(i, j);
      n.theta_x = th_x(i, j);
      n.theta_y = th_y(i, j);
      n.theta_xx = th_xx(i, j);
      n.h = s.h(i, j);
      n.h_x = h_x(i, j);
      n.h_y = h_y(i, j);
      n.h_xx = h_xx(i, j);
      n.v = s.v(i, j);
      n.g = s.g(i, j);
      if (j > 0 && j < ny - 1) {
        const double ap = 0.5 * (a(i, j) + a(i, j + 1));
        const double am = 0.5 * (a(i, j) + a(i, j - 1));
        n.visc_u = mu * idy2 * (ap * (s.u(i, j + 1) - s.u(i, j)) - am * (s.u(i, j) - s.u(i, j - 1)));
        n.theta_yy = idy2 * (s.theta(i, j + 1) - 2.0 * s.theta(i, j) + s.theta(i, j - 1));
        n.h_yy = idy2 * (s.h(i, j + 1) - 2.0 * s.h(i, j) + s.h(i, j - 1));
      } else if (j == 0) {
        // reflection across the wall realizes d_y h = 0
        n.h_yy = 2.0 * idy2 * (s.h(i, 1) - s.h(i, 0));
      }
      std::array<double, 3> c{0.0, 0.0, 0.0};
      if (has_corr) c = {corr.r1(i, j), corr.r2(i, j), corr.r3(i, j)};
      const std::array<double, 4> ph{prof.phi[j], prof.d1[j], prof.d2[j], prof.d3[j]};
      const NodeTendency d = rhs_point(n, fp[i], ph, cfg.physics, cfg.epsilon, c);
      const bool wall = j == 0, top = j == ny - 1;
      out.du(i, j) = (wall || top) ? 0.0 : d.du;
      out.dtheta(i, j) = (wall || top) ? 0.0 : d.dtheta;
      out.dh(i, j) = top ? 0.0 : d.dh;
    }
  }
  if (!out.du.all_finite() || !out.dtheta.all_finite() || !out.dh.all_finite())
    throw NonFiniteField("right-hand side is not finite");
  return out;
}

HomogeneousState apply_boundary_conditions(HomogeneousState s) {
  const Grid& grid = s.grid();
  for (int i = 0; i < grid.n_x; ++i) {
    s.u(i, 0) = s.u(i, grid.n_y - 1) = 0.0;
    s.theta(i, 0) = s.theta(i, grid.n_y - 1) = 0.0;
    s.h(i, grid.n_y - 1) = 0.0;
  }
  return HomogeneousState::from_prognostic(std::move(s.u), std::move(s.theta), std::move(s.h));
}

double cfl_number(const HomogeneousState& s, const OuterFlow& flow, const CutoffPhi& phi, const SolverConfig& cfg,
                  double t) {
  const Grid& grid = s.grid();
  const PhiProfile prof(phi, grid);
  const std::vector<FlowPoint> fp = flow_slice(flow, grid, t);
  const double dx = grid.dx(), dy = grid.dy();
  double rate = 0.0;
  for (int i = 0; i < grid.n_x; ++i) {
    for (int j = 0; j < grid.n_y; ++j) {
      const double u1 = s.u(i, j) + fp[i].U * prof.d1[j];
      const double u2 = s.v(i, j) - fp[i].U_x * prof.phi[j];
      const double h1 = s.h(i, j) + fp[i].H * prof.d1[j];
      const double h2 = s.g(i, j) - fp[i].H_x * prof.phi[j];
      rate = std::max(rate, (std::abs(u1) + std::abs(h1)) / dx + (std::abs(u2) + std::abs(h2)) / dy);
    }
  }
  const double diffusive = 2.0 * cfg.epsilon * std::max(1.0, 1.0 / cfg.physics.c_v) / (dx * dx);
  return cfg.dt * std::max(rate, diffusive);
}

namespace {

enum class Closure { Dirichlet, Neumann };

/// Solves (I - dt d_y(k d_y)) delta = rhs on one column in place. k_half[j] is
/// the coefficient between rows j and j+1. The top row is always Dirichlet.
void implicit_column(std::span<double> rhs, std::span<const double> k_half, double dt, double dy, Closure wall,
                     int column) {
  const int ny = static_cast<int>(rhs.size());
  const int first = wall == Closure::Dirichlet ? 1 : 0;
  const int n = ny - 1 - first;
  std::vector<double> sub(n), diag(n), super(n);
  const double c = dt / (dy * dy);
  for (int r = 0; r < n; ++r) {
    const int j = first + r;
    if (j == 0) {
      // ghost row h_{-1} = h_1
      sub[r] = 0.0;
      diag[r] = 1.0 + 2.0 * c * k_half[0];
      super[r] = -2.0 * c * k_half[0];
    } else {
      sub[r] = -c * k_half[j - 1];
      super[r] = -c * k_half[j];
      diag[r] = 1.0 + c * (k_half[j - 1] + k_half[j]);
    }
  }
  std::span<double> unknowns = rhs.subspan(first, n);
  const int bad = solve_tridiagonal(sub, diag, super, unknowns);
  if (bad >= 0)
    throw TridiagonalFailure("row " + std::to_string(first + bad) + " is not diagonally dominant in column " +
                                 std::to_string(column),
                             column);
  if (first == 1) rhs[0] = 0.0;
  rhs[ny - 1] = 0.0;
}

}  // namespace

HomogeneousState step(const HomogeneousState& s, const OuterFlow& flow, const CutoffPhi& phi,
                      const SolverConfig& cfg, const CorrectorSet& correctors, double t, const Forcing& forcing) {
  const Grid& grid = s.grid();
  const double cfl = cfl_number(s, flow, phi, cfg, t);
  if (!(cfl <= cfg.cfl))
    throw CFLViolation("stability number " + std::to_string(cfl) + " exceeds " + std::to_string(cfg.cfl));

  Tendency f = rhs_regularized(s, flow, phi, cfg, correctors, t);
  if (forcing) {
    Tendency extra = forcing(t);
    for (int i = 0; i < grid.n_x; ++i) {
      extra.du(i, 0) = extra.du(i, grid.n_y - 1) = 0.0;
      extra.dtheta(i, 0) = extra.dtheta(i, grid.n_y - 1) = 0.0;
      extra.dh(i, grid.n_y - 1) = 0.0;
    }
    f.axpy(1.0, extra);
  }
  f.du *= cfg.dt;
  f.dtheta *= cfg.dt;
  f.dh *= cfg.dt;

  const PhiProfile prof(phi, grid);
  const std::vector<FlowPoint> fp = flow_slice(flow, grid, t);
  const int ny = grid.n_y;
  const double dy = grid.dy();
  std::vector<double> k_u(ny - 1), k_theta(ny - 1, cfg.physics.kappa / cfg.physics.c_v), k_h(ny - 1, cfg.physics.nu);
  for (int i = 0; i < grid.n_x; ++i) {
    for (int j = 0; j + 1 < ny; ++j) {
      const double aj = s.theta(i, j) + fp[i].Theta * prof.d1[j] + 1.0;
      const double ak = s.theta(i, j + 1) + fp[i].Theta * prof.d1[j + 1] + 1.0;
      k_u[j] = cfg.physics.mu * 0.5 * (aj + ak);
    }
    implicit_column(f.du.column(i), k_u, cfg.dt, dy, Closure::Dirichlet, i);
    implicit_column(f.dtheta.column(i), k_theta, cfg.dt, dy, Closure::Dirichlet, i);
    implicit_column(f.dh.column(i), k_h, cfg.dt, dy, Closure::Neumann, i);
  }

  Field u = s.u, theta = s.theta, h = s.h;
  u += f.du;
  theta += f.dtheta;
  h += f.dh;
  HomogeneousState next = HomogeneousState::from_prognostic(std::move(u), std::move(theta), std::move(h));
  require_finite(next);
  return next;
}

std::vector<Tendency> time_derivatives_at_zero(const HomogeneousState& s0, const OuterFlow& flow,
                                               const CutoffPhi& phi, const SolverConfig& cfg, int order) {
  if (order < 0 || order > 2) throw std::invalid_argument("time derivative order must be in 0..2");
  SolverConfig plain = cfg;
  plain.epsilon = 0.0;
  const CorrectorSet none;
  std::vector<Tendency> out;
  out.push_back({s0.u, s0.theta, s0.h});
  if (order == 0) return out;
  out.push_back(rhs_regularized(s0, flow, phi, plain, none, 0.0));
  if (order == 1) return out;

  const double delta = cfg.dt / 16.0;
  auto shifted = [&](double sign) {
    Field u = s0.u, theta = s0.theta, h = s0.h;
    u.axpy(sign * delta, out[1].du);
    theta.axpy(sign * delta, out[1].dtheta);
    h.axpy(sign * delta, out[1].dh);
    return HomogeneousState::from_prognostic(std::move(u), std::move(theta), std::move(h));
  };
  const Tendency fp = rhs_regularized(shifted(1.0), flow, phi, plain, none, delta);
  const Tendency fm = rhs_regularized(shifted(-1.0), flow, phi, plain, none, -delta);
  Tendency d2 = fp;
  d2.axpy(-1.0, fm);
  const double inv = 1.0 / (2.0 * delta);
  d2.du *= inv;
  d2.dtheta *= inv;
  d2.dh *= inv;
  out.push_back(std::move(d2));
  return out;
}

CorrectorSet build_correctors(const HomogeneousState& s0, const OuterFlow& flow, const CutoffPhi& phi,
                              const SolverConfig& cfg) {
  const std::vector<Tendency> d = time_derivatives_at_zero(s0, flow, phi, cfg, cfg.corrector_order);
  CorrectorSet c;
  for (const Tendency& di : d) {
    c.rt1.push_back(ddx(di.du, 2));
    c.rt2.push_back(ddx(di.dtheta, 2));
    c.rt3.push_back(ddx(di.dh, 2));
    c.rt4.push_back(inv_dy(c.rt3.back()));
  }
  return c;
}

}  // namespace mhdlab
