#include "mhdlab/io.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace mhdlab {

namespace {

void append(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

nlohmann::json values(const Field& f) { return nlohmann::json(std::vector<double>(f.values().begin(), f.values().end())); }

}  // namespace

std::string schema_line(const std::string& kind) {
  return "# mhd_lab " + kind + " schema_version=" + std::to_string(kSchemaVersion) + "\n";
}

std::string history_csv(const std::vector<MonitorReport>& history) {
  std::string out = schema_line("history");
  out += kHistoryColumns;
  out += '\n';
  for (const MonitorReport& r : history) {
    const double row[] = {r.t,     r.norm,         r.min_theta_total,        r.min_h_total, r.div_u,  r.div_h,
                          r.m_of_t, r.equiv_ratio, r.equiv_gradient_ratio, r.sup_dy1,     r.sup_dy2};
    for (std::size_t k = 0; k < std::size(row); ++k) {
      if (k) out += ',';
      append(out, row[k]);
    }
    out += '\n';
  }
  return out;
}

std::string field_csv(const Field& f) {
  const Grid& g = f.grid();
  std::string out = schema_line("field");
  out += "x,y,value\n";
  for (int i = 0; i < g.n_x; ++i)
    for (int j = 0; j < g.n_y; ++j) {
      append(out, g.x(i));
      out += ',';
      append(out, g.y(j));
      out += ',';
      append(out, f(i, j));
      out += '\n';
    }
  return out;
}

nlohmann::json snapshot_json(const HomogeneousState& s, double t) {
  const Grid& g = s.grid();
  return {{"schema_version", kSchemaVersion},
          {"t", t},
          {"grid", {{"n_x", g.n_x}, {"n_y", g.n_y}, {"y_max", g.y_max}, {"dx", g.dx()}, {"dy", g.dy()}}},
          {"layout", "row-major, x then y"},
          {"fields",
           {{"u", values(s.u)}, {"theta", values(s.theta)}, {"h", values(s.h)}, {"v", values(s.v)},
            {"g", values(s.g)}}}};
}

std::string snapshot_name(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "snapshot_%.6f.json", t);
  return buf;
}

std::string study_csv(const std::string& kind, const std::vector<StudyRow>& rows) {
  std::string out = schema_line("study_" + kind);
  out += "axis,parameter,value,order\n";
  for (const StudyRow& r : rows) {
    out += r.axis;
    out += ',';
    append(out, r.parameter);
    out += ',';
    append(out, r.value);
    out += ',';
    append(out, r.order);
    out += '\n';
  }
  return out;
}

nlohmann::json to_json(const RunManifest& m) {
  return {{"config_hash", m.config_hash}, {"version", m.version}, {"start_time", m.start_time},
          {"end_time", m.end_time},       {"status", m.status},   {"message", m.message},
          {"files", m.files}};
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_manifest(const std::filesystem::path& dir, const RunManifest& m) {
  for (const std::string& f : m.files)
    if (!std::filesystem::exists(dir / f)) throw std::runtime_error("manifest lists missing file " + f);
  write_file_atomic(dir / "manifest.json", to_json(m).dump(2) + "\n");
}

std::string iso_time(std::chrono::system_clock::time_point t) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace mhdlab
