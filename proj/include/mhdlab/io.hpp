#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "mhdlab/diagnostics.hpp"
#include "mhdlab/grid.hpp"
#include "mhdlab/homogenize.hpp"

namespace mhdlab {

/// First line of every CSV written here is "# mhd_lab <kind> schema_version=<n>".
inline constexpr int kSchemaVersion = 1;
std::string schema_line(const std::string& kind);

/// Frozen column order of history.csv.
inline constexpr const char* kHistoryColumns =
    "t,norm_h2l,min_theta_total,min_h_total,div_u,div_h,m_of_t,equiv_ratio_lo,equiv_ratio_hi,sup_dy1,sup_dy2";

/// equiv_ratio_lo is the cancelled/plain norm ratio (expected in [1/M, M]),
/// equiv_ratio_hi the d_y variant (expected <= 1). Numbers use %.17g.
std::string history_csv(const std::vector<MonitorReport>& history);

/// header x,y,value, row-major in x then y
std::string field_csv(const Field& f);

nlohmann::json snapshot_json(const HomogeneousState& s, double t);
/// "snapshot_<t>.json" with t printed as %.6f
std::string snapshot_name(double t);

struct StudyRow {
  /// dy, dx, dt or epsilon
  std::string axis;
  double parameter = 0.0;
  /// error (grid study) or difference to the next level (epsilon study)
  double value = 0.0;
  /// observed order; NaN where undefined
  double order = 0.0;
};
std::string study_csv(const std::string& kind, const std::vector<StudyRow>& rows);

struct RunManifest {
  std::string config_hash;
  std::string version;
  std::string start_time, end_time;
  std::string status;
  std::string message;
  std::vector<std::string> files;
};
nlohmann::json to_json(const RunManifest& m);

/// Writes to a sibling temporary and renames it over the target.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

/// Throws std::runtime_error if a listed file is missing from dir.
void write_manifest(const std::filesystem::path& dir, const RunManifest& m);

/// UTC wall time, ISO 8601 to the second.
std::string iso_time(std::chrono::system_clock::time_point t);

}  // namespace mhdlab
