// mhd_lab: batch driver for the boundary-layer solver and its verification suites.
//
//   mhd_lab run --config cfg.json [--out-dir DIR]
//   mhd_lab verify inequalities|mms|epsilon|uniqueness|all [--seed S] [--n N] [--out-dir DIR]
//   mhd_lab study grid|epsilon --config cfg.json [--out-dir DIR]
//
// Exit codes: 0 success, 1 usage or config error, 2 invariant abort or failed check.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <set>

#include "CLI11.hpp"
#include "mhdlab/config.hpp"
#include "mhdlab/io.hpp"
#include "mhdlab/mms.hpp"
#include "mhdlab/run.hpp"
#include "mhdlab/suites.hpp"
#include "mhdlab/verification.hpp"

namespace fs = std::filesystem;
using namespace mhdlab;

namespace {

constexpr int kOk = 0, kUsage = 1, kAbort = 2;

struct Options {
  std::string config;
  std::string out_dir = ".";
  std::string suite;
  std::string kind;
  std::uint64_t seed = 1;
  int n = 100;
};

fs::path output_dir(const Options& o) {
  const char* env = std::getenv("MHD_LAB_OUT");
  fs::path dir = (env && *env) ? fs::path(env) : fs::path(o.out_dir);
  fs::create_directories(dir);
  return dir;
}

std::string hash_hex(const std::string& s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(fnv1a64(s)));
  return buf;
}

void write_snapshot(const fs::path& dir, const HomogeneousState& s, double t, bool fields,
                    std::vector<std::string>& files) {
  const std::string name = snapshot_name(t);
  write_file_atomic(dir / name, snapshot_json(s, t).dump() + "\n");
  files.push_back(name);
  if (!fields) return;
  const std::string stem = name.substr(std::string("snapshot_").size(), name.size() - 14);
  const std::pair<const char*, const Field*> which[] = {{"u", &s.u}, {"theta", &s.theta}, {"h", &s.h}};
  for (const auto& [label, f] : which) {
    const std::string fname = std::string("field_") + label + "_" + stem + ".csv";
    write_file_atomic(dir / fname, field_csv(*f));
    files.push_back(fname);
  }
}

int cmd_run(const Options& o) {
  const auto start = std::chrono::system_clock::now();
  const RunConfig rc = load_config(o.config);
  const Scenario& sc = rc.scenario;
  const fs::path dir = output_dir(o);

  RunManifest m;
  m.config_hash = hash_hex(rc.canonical);
  m.version = MHDLAB_VERSION;
  m.start_time = iso_time(start);

  std::set<long> snap_steps;
  for (double t : rc.output.snapshot_times) snap_steps.insert(std::lround(t / sc.cfg.dt));
  if (snap_steps.count(0)) write_snapshot(dir, sc.s0, 0.0, rc.output.field_csv, m.files);

  RunOptions opt;
  opt.observer = [&](int step, double t, const HomogeneousState& s) {
    if (snap_steps.count(step)) write_snapshot(dir, s, t, rc.output.field_csv, m.files);
  };

  RunResult r;
  try {
    r = run(sc.s0, sc.flow, sc.phi, sc.cfg, opt);
  } catch (const HypothesisViolation& e) {
    r.status = e.reason();
    r.message = e.what();
    r.final_state = sc.s0;
  }

  write_file_atomic(dir / "history.csv", history_csv(r.history));
  m.files.insert(m.files.begin(), "history.csv");
  if (std::find(m.files.begin(), m.files.end(), snapshot_name(r.t_final)) == m.files.end())
    write_snapshot(dir, r.final_state, r.t_final, rc.output.field_csv, m.files);

  m.status = r.status;
  m.message = r.message;
  m.end_time = iso_time(std::chrono::system_clock::now());
  write_manifest(dir, m);

  std::printf("run %s at t = %.6g after %d steps\n", r.status.c_str(), r.t_final, r.steps);
  if (!r.completed()) std::printf("  %s\n", r.message.c_str());
  return r.completed() ? kOk : kAbort;
}

int cmd_verify(const Options& o) {
  const std::vector<SuiteReport> reports = run_suites(o.suite, o.seed, o.n);
  nlohmann::json doc = {{"suite", o.suite}, {"seed", o.seed}, {"n_samples", o.n}, {"version", MHDLAB_VERSION}};
  bool all = true;
  nlohmann::json subs = nlohmann::json::array();
  for (const SuiteReport& r : reports) {
    all = all && r.pass();
    subs.push_back(to_json(r));
    for (const CheckRecord& c : r.checks)
      std::printf("%s %s/%s value=%.6g (%s)%s%s\n", c.pass ? "PASS" : "FAIL", r.suite.c_str(), c.name.c_str(), c.value,
                  c.criterion.c_str(), c.detail.empty() ? "" : " ", c.detail.c_str());
  }
  doc["pass"] = all;
  doc["reports"] = subs;
  write_file_atomic(output_dir(o) / "verification_report.json", doc.dump(2) + "\n");
  return all ? kOk : kAbort;
}

StudyRow row(const std::string& axis, const ConvergenceLevel& l) { return {axis, l.parameter, l.error, l.order}; }

int study_grid(const RunConfig& rc, std::vector<StudyRow>& rows) {
  if (rc.init_preset != "mms") throw ConfigError("init.preset", "the grid study needs the mms preset");
  const StudyConfig& st = rc.study;
  auto ladder_ok = [](std::size_t n) { return n == 0 || n >= 2; };
  if (st.n_y.empty() && st.n_x.empty() && st.dt.empty())
    throw ConfigError("study", "grid study needs at least one of n_y, n_x, dt");
  if (!ladder_ok(st.n_y.size())) throw ConfigError("study.n_y", "needs at least two levels");
  if (!ladder_ok(st.n_x.size())) throw ConfigError("study.n_x", "needs at least two levels");
  if (!ladder_ok(st.dt.size())) throw ConfigError("study.dt", "needs at least two levels");

  MmsSpec spec = MmsSpec::standard();
  const Scenario& sc = rc.scenario;
  spec.flow = sc.flow;
  spec.r0 = sc.phi.r0();
  spec.y_max = sc.grid.y_max;
  spec.cfg.physics = sc.cfg.physics;
  spec.cfg.epsilon = sc.cfg.epsilon;
  spec.cfg.dt = sc.cfg.dt;
  spec.cfg.t_end = sc.cfg.t_end;
  spec.cfg.cfl = sc.cfg.cfl;
  spec.n_x = sc.grid.n_x;
  spec.n_y_ladder = st.n_y;
  spec.n_x_ladder = st.n_x;
  spec.n_y_for_x = st.n_y_for_dx;
  spec.dt_ladder = st.dt;
  spec.n_x_for_t = st.n_x_for_dt;
  spec.n_y_for_t = st.n_y_for_dt;
  spec.t_end_for_t = st.t_end_for_dt;
  const MmsReport r = mms_convergence(spec);
  for (const auto& l : r.dy) rows.push_back(row("dy", l));
  for (const auto& l : r.dx) rows.push_back(row("dx", l));
  for (const auto& l : r.dt) rows.push_back(row("dt", l));
  if (!r.failure.empty()) {
    std::fprintf(stderr, "grid study: %s\n", r.failure.c_str());
    return kAbort;
  }
  return kOk;
}

int study_epsilon(const RunConfig& rc, std::vector<StudyRow>& rows) {
  const auto& eps = rc.study.epsilons;
  if (eps.empty()) throw ConfigError("study.epsilons", "empty refinement list");
  EpsilonStudyReport r;
  try {
    r = epsilon_study(rc.scenario, eps);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("study.epsilons", e.what());
  }
  std::vector<ConvergenceLevel> levels;
  for (std::size_t k = 0; k + 1 < r.rows.size(); ++k) levels.push_back({r.rows[k].epsilon, r.rows[k].difference, 0.0});
  fill_orders(levels);
  for (const auto& l : levels) rows.push_back(row("epsilon", l));
  for (const auto& row : r.rows)
    if (row.status != "completed") std::fprintf(stderr, "epsilon %.6g: %s\n", row.epsilon, row.status.c_str());
  if (!r.monotone) std::fprintf(stderr, "epsilon study: differences are not monotone\n");
  return r.completed ? kOk : kAbort;
}

int cmd_study(const Options& o) {
  if (o.kind != "grid" && o.kind != "epsilon") {
    std::fprintf(stderr, "unknown study kind '%s' (expected grid or epsilon)\n", o.kind.c_str());
    return kUsage;
  }
  const RunConfig rc = load_config(o.config);
  std::vector<StudyRow> rows;
  const int code = o.kind == "grid" ? study_grid(rc, rows) : study_epsilon(rc, rows);
  write_file_atomic(output_dir(o) / ("study_" + o.kind + ".csv"), study_csv(o.kind, rows));
  for (const auto& r : rows) std::printf("%-8s %-12.6g %-14.6g %.4f\n", r.axis.c_str(), r.parameter, r.value, r.order);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary-layer MHD solver and verification harness"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--out-dir", o.out_dir, "Output directory (MHD_LAB_OUT overrides)");

  auto* run = app.add_subcommand("run", "Run a configured simulation");
  run->add_option("--config", o.config, "JSON config file")->required();
  run->add_option("--seed", o.seed, "Recorded for reproducibility; the solver is deterministic");
  run->add_option("--out-dir", o.out_dir, "Output directory");

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", o.suite, "inequalities, mms, epsilon, uniqueness or all")->required();
  verify->add_option("--seed", o.seed, "Seed of the randomized inequality samples");
  verify->add_option("--n", o.n, "Samples per inequality");
  verify->add_option("--out-dir", o.out_dir, "Output directory");

  auto* study = app.add_subcommand("study", "Refinement study");
  study->add_option("kind", o.kind, "grid or epsilon")->required();
  study->add_option("--config", o.config, "JSON config file")->required();
  study->add_option("--out-dir", o.out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*run) return cmd_run(o);
    if (*verify) {
      const auto& names = suite_names();
      if (o.suite != "all" && std::find(names.begin(), names.end(), o.suite) == names.end()) {
        std::fprintf(stderr, "unknown suite '%s'\n", o.suite.c_str());
        return kUsage;
      }
      if (o.n < 1) {
        std::fprintf(stderr, "--n must be >= 1\n");
        return kUsage;
      }
      return cmd_verify(o);
    }
    return cmd_study(o);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  }
}
