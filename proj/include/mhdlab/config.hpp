#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "mhdlab/presets.hpp"

namespace mhdlab {

/// Bad or missing configuration entry; key() is the dotted path, e.g. "physics.mu".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct StudyConfig {
  /// epsilon study, descending
  std::vector<double> epsilons;
  /// grid study ladders; an absent list skips that direction
  std::vector<int> n_y, n_x;
  std::vector<double> dt;
  /// grid of the dx ladder (n_y) and of the dt ladder; default to the grid section
  int n_y_for_dx = 0, n_x_for_dt = 0, n_y_for_dt = 0;
  /// time horizon of the dt ladder
  double t_end_for_dt = 1.0;
};

struct OutputConfig {
  /// snapshot times besides the final one; each is rounded to the nearest step
  std::vector<double> snapshot_times;
  /// also write field_<name>_<t>.csv next to each snapshot
  bool field_csv = false;
};

/// Everything a run needs, built from a JSON document with sections
/// physics, grid, time, solver, flow, init, study, output.
struct RunConfig {
  std::string flow_preset, init_preset;
  PresetParams flow_params, init_params;
  Scenario scenario;
  StudyConfig study;
  OutputConfig output;
  /// canonical dump of the input document; the config hash is taken over this
  std::string canonical;
};

RunConfig parse_config(const nlohmann::json& doc);
/// Throws ConfigError with key "config" when the file is unreadable or not JSON.
RunConfig load_config(const std::filesystem::path& path);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace mhdlab
