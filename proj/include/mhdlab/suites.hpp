#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace mhdlab {

struct CheckRecord {
  std::string name;
  bool pass = false;
  /// the measured quantity (worst ratio, order, relative change, ...)
  double value = 0.0;
  /// the acceptance rule applied to value
  std::string criterion;
  std::uint64_t seed = 0;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckRecord> checks;
  bool pass() const;
};

nlohmann::json to_json(const SuiteReport& r);

/// Names accepted by run_suites besides "all".
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all". seed and n_samples only affect the
/// inequality suite. Throws std::invalid_argument for an unknown name.
std::vector<SuiteReport> run_suites(const std::string& name, std::uint64_t seed, int n_samples);

SuiteReport inequality_suite(std::uint64_t seed, int n_samples);
SuiteReport mms_suite();
SuiteReport epsilon_suite();
SuiteReport uniqueness_suite();

/// Time of the last state with h + H phi' >= delta0 on the magnetic-floor preset.
double magnetic_floor_horizon(double epsilon);

}  // namespace mhdlab
