#include "mhdlab/homogenize.hpp"

#include "mhdlab/operators.hpp"

namespace mhdlab {

HomogeneousState HomogeneousState::from_prognostic(Field u, Field theta, Field h) {
  require_same_grid(u, theta);
  require_same_grid(u, h);
  auto [v, g] = reconstruct_vg(u, h);
  return {std::move(u), std::move(theta), std::move(h), std::move(v), std::move(g)};
}

HomogeneousState HomogeneousState::zero(const Grid& grid) {
  return {Field(grid), Field(grid), Field(grid), Field(grid), Field(grid)};
}

PhiProfile::PhiProfile(const CutoffPhi& cutoff, const Grid& grid)
    : phi(grid.n_y), d1(grid.n_y), d2(grid.n_y), d3(grid.n_y) {
  for (int j = 0; j < grid.n_y; ++j) {
    const auto p = cutoff.eval_all(grid.y(j));
    phi[j] = p[0];
    d1[j] = p[1];
    d2[j] = p[2];
    d3[j] = p[3];
  }
}

std::vector<FlowPoint> flow_slice(const OuterFlow& flow, const Grid& grid, double t) {
  std::vector<FlowPoint> out(grid.n_x);
  for (int i = 0; i < grid.n_x; ++i) out[i] = eval_flow(flow, t, grid.x(i));
  return out;
}

HomogeneousState to_homogeneous(const PhysicalState& p, const OuterFlow& flow, const CutoffPhi& phi, double t) {
  const Grid& g = p.u1.grid();
  const PhiProfile pr(phi, g);
  const auto fs = flow_slice(flow, g, t);
  HomogeneousState s = HomogeneousState::zero(g);
  for (int i = 0; i < g.n_x; ++i) {
    const FlowPoint& f = fs[i];
    for (int j = 0; j < g.n_y; ++j) {
      s.u(i, j) = p.u1(i, j) - f.U * pr.d1[j];
      s.v(i, j) = p.u2(i, j) + f.U_x * pr.phi[j];
      s.h(i, j) = p.h1(i, j) - f.H * pr.d1[j];
      s.g(i, j) = p.h2(i, j) + f.H_x * pr.phi[j];
      s.theta(i, j) = p.theta_phys(i, j) - f.Theta * pr.d1[j];
    }
  }
  return s;
}

PhysicalState from_homogeneous(const HomogeneousState& s, const OuterFlow& flow, const CutoffPhi& phi, double t) {
  const Grid& g = s.grid();
  const PhiProfile pr(phi, g);
  const auto fs = flow_slice(flow, g, t);
  PhysicalState p{Field(g), Field(g), Field(g), Field(g), Field(g)};
  for (int i = 0; i < g.n_x; ++i) {
    const FlowPoint& f = fs[i];
    for (int j = 0; j < g.n_y; ++j) {
      p.u1(i, j) = s.u(i, j) + f.U * pr.d1[j];
      p.u2(i, j) = s.v(i, j) - f.U_x * pr.phi[j];
      p.h1(i, j) = s.h(i, j) + f.H * pr.d1[j];
      p.h2(i, j) = s.g(i, j) - f.H_x * pr.phi[j];
      p.theta_phys(i, j) = s.theta(i, j) + f.Theta * pr.d1[j];
    }
  }
  return p;
}

VG reconstruct_vg(const Field& u, const Field& h) {
  Field v = inv_dy(ddx(u, 1));
  v *= -1.0;
  Field g = inv_dy(ddx(h, 1));
  g *= -1.0;
  return {std::move(v), std::move(g)};
}

SourcePoint source_point(const FlowPoint& f, const std::array<double, 4>& phi, const PhysicalConstants& pc) {
  const double p0 = phi[0], p1 = phi[1], p2 = phi[2], p3 = phi[3];
  const double Up2 = f.U * p2;
  SourcePoint r;
  r.r1 = f.U_t * (p1 * p1 - p1 - p0 * p2) + f.P_x * (p1 * p1 - p0 * p2 - 1.0) +
         pc.mu * f.U * f.Theta * (p1 * p3 + p2 * p2) + pc.mu * f.U * p3;
  r.r2 = pc.c_v * f.Theta_t * (p1 * p1 - p1) + pc.c_v * f.U_x * f.Theta * p0 * p2 + pc.kappa * f.Theta * p3 +
         pc.mu * f.Theta * p1 * Up2 * Up2 + pc.mu * Up2 * Up2 + pc.nu * (f.H * p2) * (f.H * p2);
  r.r3 = f.H_t * (p1 * p1 - p1 + p0 * p2) + pc.nu * f.H * p3;
  r.r4 = f.H_t * p0 * (p1 - 1.0) + pc.nu * f.H * p2;
  return r;
}

SourceTerms source_terms(const OuterFlow& flow, const CutoffPhi& phi, const PhysicalConstants& pc,
                         const Grid& grid, double t) {
  const PhiProfile pr(phi, grid);
  const auto fs = flow_slice(flow, grid, t);
  SourceTerms out{Field(grid), Field(grid), Field(grid), Field(grid)};
  for (int i = 0; i < grid.n_x; ++i)
    for (int j = 0; j < grid.n_y; ++j) {
      const SourcePoint r = source_point(fs[i], {pr.phi[j], pr.d1[j], pr.d2[j], pr.d3[j]}, pc);
      out.r1(i, j) = r.r1;
      out.r2(i, j) = r.r2;
      out.r3(i, j) = r.r3;
      out.r4(i, j) = r.r4;
    }
  return out;
}

}  // namespace mhdlab
