#include "mhdlab/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mhdlab/norms.hpp"
#include "mhdlab/operators.hpp"

namespace mhdlab {

namespace {

double l2_distance(const HomogeneousState& a, const HomogeneousState& b) {
  const Field d[] = {a.u - b.u, a.theta - b.theta, a.h - b.h};
  return weighted_l2_norm(d, 0.0);
}

}  // namespace

EpsilonStudyReport epsilon_study(const Scenario& base, const std::vector<double>& epsilons) {
  if (epsilons.size() < 3) throw std::invalid_argument("epsilon_study: need at least 3 epsilon values");
  for (std::size_t k = 1; k < epsilons.size(); ++k)
    if (!(epsilons[k] < epsilons[k - 1])) throw std::invalid_argument("epsilon_study: epsilons must be descending");

  EpsilonStudyReport rep;
  std::vector<HomogeneousState> finals;
  rep.completed = true;
  for (double eps : epsilons) {
    SolverConfig cfg = base.cfg;
    cfg.epsilon = eps;
    const RunResult r = run(base.s0, base.flow, base.phi, cfg);
    EpsilonRow row;
    row.epsilon = eps;
    row.norm = r.history.empty() ? std::numeric_limits<double>::quiet_NaN() : r.history.back().norm;
    row.status = r.status;
    rep.completed = rep.completed && r.completed();
    rep.rows.push_back(row);
    finals.push_back(r.final_state);
  }
  for (std::size_t k = 0; k + 1 < finals.size(); ++k) rep.rows[k].difference = l2_distance(finals[k], finals[k + 1]);

  rep.monotone = true;
  for (std::size_t k = 1; k + 1 < rep.rows.size(); ++k)
    if (rep.rows[k].difference > rep.rows[k - 1].difference) rep.monotone = false;
  double lo = INFINITY, hi = 0.0;
  for (const auto& row : rep.rows) {
    lo = std::min(lo, row.norm);
    hi = std::max(hi, row.norm);
  }
  rep.norm_variation = hi > 0.0 ? (hi - lo) / hi : 0.0;
  return rep;
}

DifferenceState difference_state(const HomogeneousState& a, const HomogeneousState& b, const OuterFlow& flow,
                                 const CutoffPhi& phi, const SolverConfig& cfg, double t) {
  const EtaCoefficients eta = eta_coefficients(b, flow, phi, cfg, t);
  DifferenceState d;
  const Field h_tilde = a.h - b.h;
  d.psi_tilde = inv_dy(h_tilde);
  d.u_bar = (a.u - b.u) - hadamard(eta.eta1, d.psi_tilde);
  d.theta_bar = (a.theta - b.theta) - hadamard(eta.eta2, d.psi_tilde);
  d.h_bar = h_tilde - hadamard(eta.eta3, d.psi_tilde);
  Field ratio(h_tilde.grid());
  for (std::size_t k = 0; k < ratio.size(); ++k) ratio[k] = d.h_bar[k] / eta.denominator[k];
  d.psi_rebuilt = hadamard(eta.denominator, inv_dy(ratio));
  return d;
}

double difference_energy(const DifferenceState& d) {
  const Field f[] = {d.u_bar, d.theta_bar, d.h_bar};
  const double n = weighted_l2_norm(f, 0.0);
  return n * n;
}

UniquenessReport uniqueness_contraction(const HomogeneousState& s0a, const HomogeneousState& s0b,
                                        const OuterFlow& flow, const CutoffPhi& phi, const SolverConfig& cfg,
                                        const UniquenessOptions& options) {
  cfg.validate();
  for (const HomogeneousState* s : {&s0a, &s0b}) {
    const HypothesisReport h = check_initial_hypotheses(*s, flow, phi, cfg);
    if (!h.ok()) throw HypothesisViolation("initial data rejected: " + h.describe());
  }
  const bool corr = cfg.epsilon > 0.0;
  const CorrectorSet ca = corr ? build_correctors(s0a, flow, phi, cfg) : CorrectorSet{};
  const CorrectorSet cb = corr ? build_correctors(s0b, flow, phi, cfg) : CorrectorSet{};

  UniquenessReport rep;
  HomogeneousState a = HomogeneousState::from_prognostic(s0a.u, s0a.theta, s0a.h);
  HomogeneousState b = HomogeneousState::from_prognostic(s0b.u, s0b.theta, s0b.h);
  auto sample = [&](double t) {
    const DifferenceState d = difference_state(a, b, flow, phi, cfg, t);
    const double e = difference_energy(d);
    rep.t.push_back(t);
    rep.energy.push_back(e);
    rep.sup_energy = std::max(rep.sup_energy, e);
    const double scale = d.psi_tilde.max_abs();
    if (scale > 0.0) rep.psi_rebuild_error = std::max(rep.psi_rebuild_error, (d.psi_rebuilt - d.psi_tilde).max_abs() / scale);
    const double hb = d.h_bar.max_abs();
    if (hb > 0.0) {
      const Field hy = ddy(d.h_bar);
      double wall = 0.0;
      for (int i = 0; i < hy.grid().n_x; ++i) wall = std::max(wall, std::abs(hy(i, 0)));
      rep.wall_neumann_residual = std::max(rep.wall_neumann_residual, wall / hb);
    }
  };

  const long n_steps = std::lround(cfg.t_end / cfg.dt);
  const long every = std::max(1L, std::lround(options.record_interval / cfg.dt));
  try {
    sample(0.0);
    for (long n = 0; n < n_steps; ++n) {
      const double t = static_cast<double>(n) * cfg.dt;
      a = step(a, flow, phi, cfg, ca, t);
      b = step(b, flow, phi, cfg, cb, t);
      if ((n + 1) % every == 0 || n + 1 == n_steps) sample(static_cast<double>(n + 1) * cfg.dt);
    }
  } catch (const SolverError& e) {
    rep.status = e.reason();
    rep.message = e.what();
  }

  const double e0 = rep.energy.empty() ? 0.0 : rep.energy.front();
  if (e0 > 0.0) {
    rep.c_fit = -INFINITY;
    for (std::size_t k = 1; k < rep.t.size(); ++k)
      rep.c_fit = std::max(rep.c_fit, std::log(rep.energy[k] / e0) / rep.t[k]);
  } else {
    rep.c_fit = std::numeric_limits<double>::quiet_NaN();
  }
  return rep;
}

HomogeneousState perturb_magnetic_field(const HomogeneousState& s, double delta) {
  const Grid& g = s.grid();
  const double Y = g.y_max;
  Field h = s.h + Field::sample(g, [&](double x, double y) {
              return delta * std::cos(x) * (1.0 + y) * std::exp(-y) * (1.0 - (y / Y) * (y / Y));
            });
  return HomogeneousState::from_prognostic(s.u, s.theta, std::move(h));
}

}  // namespace mhdlab
