#include "mhdlab/presets.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "mhdlab/mms.hpp"

namespace mhdlab {

namespace {

/// Reads parameters with defaults and rejects keys outside the known set.
class ParamReader {
 public:
  ParamReader(const std::string& preset, const PresetParams& p, std::set<std::string> known)
      : preset_(preset), p_(p) {
    for (const auto& [key, value] : p_)
      if (!known.count(key)) throw std::invalid_argument("preset '" + preset_ + "' has no parameter '" + key + "'");
  }
  double get(const std::string& key, double fallback) const {
    const auto it = p_.find(key);
    return it == p_.end() ? fallback : it->second;
  }

 private:
  std::string preset_;
  const PresetParams& p_;
};

}  // namespace

OuterFlow make_flow(const std::string& name, const PresetParams& params) {
  if (name == "zero") {
    ParamReader r(name, params, {});
    return flow_presets::zero();
  }
  if (name == "constant") {
    ParamReader r(name, params, {"U", "Theta", "H", "P"});
    return flow_presets::constant(r.get("U", 0.0), r.get("Theta", 0.0), r.get("H", 0.0), r.get("P", 0.0));
  }
  if (name == "traveling_pair") {
    ParamReader r(name, params, {"U0", "H0", "a", "T0", "b", "k"});
    return flow_presets::traveling_pair(r.get("U0", 1.0), r.get("H0", 1.0), r.get("a", 0.2), r.get("T0", 0.5),
                                        r.get("b", 0.3), r.get("k", 1.0));
  }
  if (name == "steady_alfven") {
    ParamReader r(name, params, {"c", "a", "k", "Theta0", "P0"});
    return flow_presets::steady_alfven(r.get("c", 1.0), r.get("a", 0.2), r.get("k", 1.0), r.get("Theta0", 1.0),
                                       r.get("P0", 0.0));
  }
  throw std::invalid_argument("unknown flow preset '" + name + "'");
}

HomogeneousState make_initial_state(const std::string& name, const Grid& grid, const PresetParams& params) {
  const double Y = grid.y_max;
  auto cut = [Y](double y) { return 1.0 - (y / Y) * (y / Y); };
  if (name == "zero") {
    ParamReader r(name, params, {});
    return HomogeneousState::zero(grid);
  }
  if (name == "shear") {
    ParamReader r(name, params, {"A", "tilt", "field", "field_tilt"});
    const double A = r.get("A", 1.0), tilt = r.get("tilt", 0.5);
    const double B = r.get("field", 1.0), btilt = r.get("field_tilt", 0.2);
    Field u = Field::sample(grid, [&](double x, double y) {
      return A * (1.0 + tilt * std::sin(x)) * y * std::exp(-y) * cut(y);
    });
    Field h = Field::sample(grid, [&](double x, double y) {
      return B * (1.0 + btilt * std::cos(x)) * (1.0 + y) * std::exp(-y) * cut(y);
    });
    return HomogeneousState::from_prognostic(std::move(u), Field(grid), std::move(h));
  }
  if (name == "magnetic_floor") {
    ParamReader r(name, params, {"A", "L", "field", "width"});
    const double A = r.get("A", 3.2), L = r.get("L", 2.0), c = r.get("field", 0.25), w = r.get("width", 8.0);
    // y (1 - y/(2L)) e^{-y/L} carries no net flux, so v stays bounded aloft
    Field u = Field::sample(grid, [&](double x, double y) {
      return A * std::sin(x) * y * (1.0 - y / (2.0 * L)) * std::exp(-y / L) * cut(y);
    });
    Field h = Field::sample(grid, [&](double, double y) { return c * std::exp(-y * y / w) * cut(y); });
    return HomogeneousState::from_prognostic(std::move(u), Field(grid), std::move(h));
  }
  if (name == "mms") {
    ParamReader r(name, params, {"unsteady"});
    return ManufacturedSolution::standard(grid.y_max, r.get("unsteady", 0.0) != 0.0).sample(grid, 0.0);
  }
  throw std::invalid_argument("unknown init preset '" + name + "'");
}

namespace scenarios {

Scenario zero() {
  Scenario s{Grid::make(16, 41, 8.0, 1.0), CutoffPhi(1.0), make_flow("zero"), {}, {}};
  s.cfg.dt = 1e-2;
  s.cfg.t_end = 0.1;
  s.cfg.check_magnetic_floor = false;
  s.s0 = make_initial_state("zero", s.grid);
  return s;
}

Scenario shear(int n_y) {
  Scenario s{Grid::make(32, n_y, 8.0, 1.0), CutoffPhi(1.0), make_flow("traveling_pair"), {}, {}};
  s.cfg.delta0 = 0.1;
  s.cfg.dt = 1e-3;
  s.cfg.t_end = 0.5;
  s.cfg.monitor_every = 50;
  s.s0 = make_initial_state("shear", s.grid);
  return s;
}

Scenario magnetic_floor(double epsilon) {
  Scenario s{Grid::make(32, 161, 8.0, 1.0), CutoffPhi(1.0),
             make_flow("constant", {{"U", 0.0}, {"Theta", 0.5}, {"H", 0.25}}), {}, {}};
  s.cfg.delta0 = 0.1;
  s.cfg.epsilon = epsilon;
  s.cfg.dt = 1e-3;
  s.cfg.t_end = 1.0;
  s.cfg.monitor_every = 50;
  // epsilon > 0 correctors push theta slightly below zero
  s.cfg.temperature_tolerance = 1e-3;
  s.s0 = make_initial_state("magnetic_floor", s.grid);
  return s;
}

}  // namespace scenarios

}  // namespace mhdlab
