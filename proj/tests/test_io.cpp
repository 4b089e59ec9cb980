#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mhdlab/config.hpp"
#include "mhdlab/io.hpp"

using namespace mhdlab;
using nlohmann::json;

namespace {

json minimal() {
  return json::parse(R"({
    "physics": {"mu": 1, "kappa": 1, "nu": 1, "c_v": 1, "delta0": 0.1},
    "grid": {"n_x": 16, "n_y": 41},
    "time": {"dt": 0.01, "t_end": 0.1},
    "solver": {"check_magnetic_floor": false},
    "flow": {"preset": "zero"},
    "init": {"preset": "zero"}
  })");
}

std::string error_key(const json& doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "";
}

}  // namespace

TEST_CASE("minimal config parses with defaults") {
  const RunConfig rc = parse_config(minimal());
  CHECK(rc.scenario.grid.y_max == 8.0);
  CHECK(rc.scenario.cfg.epsilon == 0.0);
  CHECK(rc.scenario.cfg.dt == 0.01);
  CHECK_FALSE(rc.scenario.cfg.check_magnetic_floor);
  CHECK(rc.flow_preset == "zero");
  CHECK(rc.scenario.s0.u.max_abs() == 0.0);
}

TEST_CASE("config errors name the offending key") {
  json d = minimal();
  d["physics"].erase("mu");
  CHECK(error_key(d) == "physics.mu");

  d = minimal();
  d["grid"]["n_x"] = 16.5;
  CHECK(error_key(d) == "grid.n_x");

  d = minimal();
  d["time"]["dt"] = -1.0;
  CHECK(error_key(d) == "time.dt");

  d = minimal();
  d["physics"]["kappa"] = 0.0;
  CHECK(error_key(d) == "physics.kappa");

  d = minimal();
  d["solver"]["corrector_order"] = 5;
  CHECK(error_key(d) == "solver.corrector_order");

  d = minimal();
  d["time"]["step"] = 1;
  CHECK(error_key(d) == "time.step");

  d = minimal();
  d["extras"] = json::object();
  CHECK(error_key(d) == "extras");

  d = minimal();
  d["flow"]["preset"] = "vortex";
  CHECK(error_key(d) == "flow");

  d = minimal();
  d["init"]["params"] = {{"amplitude", 1.0}};
  CHECK(error_key(d) == "init");

  d = minimal();
  d.erase("grid");
  CHECK(error_key(d) == "grid");
}

TEST_CASE("preset parameters pass through") {
  json d = minimal();
  d["flow"] = {{"preset", "constant"}, {"params", {{"U", 0.5}, {"H", 2.0}}}};
  d["init"] = {{"preset", "mms"}, {"params", {{"unsteady", true}}}};
  const RunConfig rc = parse_config(d);
  CHECK(rc.flow_params.at("U") == 0.5);
  CHECK(rc.init_params.at("unsteady") == 1.0);
  CHECK(rc.scenario.flow.H.eval(0.0, 1.0) == doctest::Approx(2.0));
}

TEST_CASE("FNV-1a reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("history csv has the frozen columns and full precision") {
  MonitorReport r;
  r.t = 0.1;
  r.norm = 1.0 / 3.0;
  r.m_of_t = 20.0;
  const std::string csv = history_csv({r});
  std::istringstream in(csv);
  std::string schema, header, row;
  std::getline(in, schema);
  std::getline(in, header);
  std::getline(in, row);
  CHECK(schema == "# mhd_lab history schema_version=1");
  CHECK(header == kHistoryColumns);
  CHECK(row.rfind("0.10000000000000001,0.33333333333333331,", 0) == 0);
  CHECK(std::count(row.begin(), row.end(), ',') == 10);
}

TEST_CASE("field csv is row-major in x then y") {
  const Grid g = Grid::make(8, 16, 4.0, 1.0);
  const Field f = Field::sample(g, [](double x, double y) { return 10.0 * x + y; });
  std::istringstream in(field_csv(f));
  std::string line;
  std::getline(in, line);
  CHECK(line.find("schema_version=1") != std::string::npos);
  std::getline(in, line);
  CHECK(line == "x,y,value");
  std::getline(in, line);
  CHECK(line == "0,0,0");
  std::getline(in, line);
  CHECK(line.rfind("0,0.26666666666666666,", 0) == 0);
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows + 2 == static_cast<int>(g.size()));
}

TEST_CASE("snapshot json carries grid metadata") {
  const Grid g = Grid::make(8, 16, 4.0, 1.0);
  const json j = snapshot_json(HomogeneousState::zero(g), 0.25);
  CHECK(j["grid"]["n_x"] == 8);
  CHECK(j["fields"]["u"].size() == g.size());
  CHECK(snapshot_name(0.25) == "snapshot_0.250000.json");
}

TEST_CASE("manifest is written atomically and checks its file list") {
  const auto dir = std::filesystem::temp_directory_path() / "mhdlab_test_io";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  write_file_atomic(dir / "history.csv", "x\n");
  RunManifest m;
  m.status = "completed";
  m.files = {"history.csv"};
  write_manifest(dir, m);
  CHECK(std::filesystem::exists(dir / "manifest.json"));
  CHECK_FALSE(std::filesystem::exists(dir / "manifest.json.tmp"));
  std::ifstream in(dir / "manifest.json");
  CHECK(json::parse(in)["status"] == "completed");

  m.files.push_back("missing.csv");
  CHECK_THROWS_AS(write_manifest(dir, m), std::runtime_error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("study csv rows") {
  const std::string csv = study_csv("grid", {{"dy", 0.1, 1e-3, std::nan("")}, {"dy", 0.05, 2.5e-4, 2.0}});
  CHECK(csv.find("# mhd_lab study_grid schema_version=1\naxis,parameter,value,order\n") == 0);
  CHECK(csv.find("dy,0.10000000000000001,0.001,nan\n") != std::string::npos);
  CHECK(csv.find("dy,0.050000000000000003,0.00025000000000000001,2\n") != std::string::npos);
}
