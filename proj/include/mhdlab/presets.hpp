#pragma once

#include <map>
#include <string>

#include "mhdlab/homogenize.hpp"
#include "mhdlab/outer_flow.hpp"
#include "mhdlab/solver.hpp"

namespace mhdlab {

using PresetParams = std::map<std::string, double>;

/// Outer flows by name: zero, constant, traveling_pair, steady_alfven.
/// Missing parameters take defaults; unknown names or parameters throw
/// std::invalid_argument naming them.
OuterFlow make_flow(const std::string& name, const PresetParams& params = {});

/// Initial homogenized data by name: zero, shear, magnetic_floor, mms.
/// The profiles are multiplied by 1 - (y/y_max)^2 so they vanish at the top.
HomogeneousState make_initial_state(const std::string& name, const Grid& grid, const PresetParams& params = {});

/// A complete, runnable setup.
struct Scenario {
  Grid grid;
  CutoffPhi phi;
  OuterFlow flow;
  SolverConfig cfg;
  HomogeneousState s0;
};

namespace scenarios {
/// Zero data under a zero flow (the floor check is disabled since H = 0).
Scenario zero();
/// Sheared velocity and a tilted field under a traveling outer pair, theta0 = 0;
/// exercises viscous and Joule heating.
Scenario shear(int n_y = 161);
/// A weak field h0 + H phi' >= 2 delta0 swept by a strong x-varying shear until the
/// floor h + H phi' >= delta0 is breached near t = 0.75.
Scenario magnetic_floor(double epsilon = 0.0);
}  // namespace scenarios

}  // namespace mhdlab
