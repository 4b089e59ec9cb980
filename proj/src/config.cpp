#include "mhdlab/config.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace mhdlab {

namespace {

using nlohmann::json;

/// One config section; every lookup is recorded so leftovers can be rejected.
class Section {
 public:
  Section(const json& doc, std::string name, bool required) : name_(std::move(name)) {
    const auto it = doc.find(name_);
    if (it == doc.end()) {
      if (required) throw ConfigError(name_, "missing section");
      return;
    }
    if (!it->is_object()) throw ConfigError(name_, "must be an object");
    obj_ = &*it;
  }

  bool present() const { return obj_ != nullptr; }

  const json* find(const std::string& key) {
    seen_.insert(key);
    if (!obj_) return nullptr;
    const auto it = obj_->find(key);
    return it == obj_->end() ? nullptr : &*it;
  }

  std::string path(const std::string& key) const { return name_ + "." + key; }

  double number(const std::string& key) {
    const json* v = find(key);
    if (!v) throw ConfigError(path(key), "missing key");
    return as_number(key, *v);
  }
  double number(const std::string& key, double fallback) {
    const json* v = find(key);
    return v ? as_number(key, *v) : fallback;
  }
  int integer(const std::string& key) {
    const json* v = find(key);
    if (!v) throw ConfigError(path(key), "missing key");
    return as_integer(key, *v);
  }
  int integer(const std::string& key, int fallback) {
    const json* v = find(key);
    return v ? as_integer(key, *v) : fallback;
  }
  bool boolean(const std::string& key, bool fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_boolean()) throw ConfigError(path(key), "must be true or false");
    return v->get<bool>();
  }
  std::string string(const std::string& key) {
    const json* v = find(key);
    if (!v) throw ConfigError(path(key), "missing key");
    if (!v->is_string()) throw ConfigError(path(key), "must be a string");
    return v->get<std::string>();
  }
  template <class T>
  std::vector<T> list(const std::string& key) {
    const json* v = find(key);
    if (!v) return {};
    if (!v->is_array()) throw ConfigError(path(key), "must be an array");
    std::vector<T> out;
    for (const json& e : *v) {
      if constexpr (std::is_integral_v<T>)
        out.push_back(as_integer(key, e));
      else
        out.push_back(as_number(key, e));
    }
    return out;
  }
  PresetParams params(const std::string& key) {
    const json* v = find(key);
    PresetParams out;
    if (!v) return out;
    if (!v->is_object()) throw ConfigError(path(key), "must be an object");
    for (const auto& [k, e] : v->items()) {
      if (e.is_boolean())
        out[k] = e.get<bool>() ? 1.0 : 0.0;
      else if (e.is_number())
        out[k] = e.get<double>();
      else
        throw ConfigError(path(key) + "." + k, "must be a number");
    }
    return out;
  }

  void reject_unknown() const {
    if (!obj_) return;
    for (const auto& [k, v] : obj_->items())
      if (!seen_.count(k)) throw ConfigError(path(k), "unknown key");
  }

 private:
  double as_number(const std::string& key, const json& v) const {
    if (!v.is_number()) throw ConfigError(path(key), "must be a number");
    return v.get<double>();
  }
  int as_integer(const std::string& key, const json& v) const {
    if (!v.is_number_integer()) throw ConfigError(path(key), "must be an integer");
    return v.get<int>();
  }

  std::string name_;
  const json* obj_ = nullptr;
  std::set<std::string> seen_;
};

/// Section of each SolverConfig field, for naming validate() failures.
std::string qualified(const std::string& field) {
  static const std::map<std::string, std::string> where{
      {"mu", "physics"},       {"kappa", "physics"}, {"nu", "physics"},   {"c_v", "physics"},
      {"epsilon", "physics"},  {"delta0", "physics"}, {"dt", "time"},     {"t_end", "time"},
      {"monitor_every", "time"}};
  const auto it = where.find(field);
  return (it == where.end() ? std::string("solver") : it->second) + "." + field;
}

}  // namespace

RunConfig parse_config(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config", "top level must be an object");
  static const std::set<std::string> sections{"physics", "grid", "time", "solver", "flow", "init", "study", "output"};
  for (const auto& [k, v] : doc.items())
    if (!sections.count(k)) throw ConfigError(k, "unknown section");

  RunConfig rc;
  SolverConfig& cfg = rc.scenario.cfg;

  Section physics(doc, "physics", true);
  cfg.physics.mu = physics.number("mu");
  cfg.physics.kappa = physics.number("kappa");
  cfg.physics.nu = physics.number("nu");
  cfg.physics.c_v = physics.number("c_v");
  cfg.epsilon = physics.number("epsilon", 0.0);
  cfg.delta0 = physics.number("delta0");
  physics.reject_unknown();

  Section grid(doc, "grid", true);
  const int n_x = grid.integer("n_x"), n_y = grid.integer("n_y");
  const double r0 = grid.number("r0", 1.0);
  const double y_max = grid.number("y_max", 8.0 * r0);
  grid.reject_unknown();
  try {
    rc.scenario.grid = Grid::make(n_x, n_y, y_max, r0);
    rc.scenario.phi = CutoffPhi(r0);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("grid", e.what());
  }

  Section time(doc, "time", true);
  cfg.dt = time.number("dt");
  cfg.t_end = time.number("t_end");
  cfg.monitor_every = time.integer("monitor_every", cfg.monitor_every);
  time.reject_unknown();

  Section solver(doc, "solver", false);
  cfg.corrector_order = solver.integer("corrector_order", cfg.corrector_order);
  cfg.cfl = solver.number("cfl", cfg.cfl);
  cfg.temperature_tolerance = solver.number("temperature_tolerance", cfg.temperature_tolerance);
  cfg.blowup_threshold = solver.number("blowup_threshold", cfg.blowup_threshold);
  cfg.check_magnetic_floor = solver.boolean("check_magnetic_floor", cfg.check_magnetic_floor);
  cfg.norm_m = solver.integer("norm_m", cfg.norm_m);
  cfg.weight_l = solver.number("weight_l", cfg.weight_l);
  if (const auto beta = solver.list<int>("monitor_beta"); !beta.empty()) {
    if (beta.size() != 2) throw ConfigError("solver.monitor_beta", "must have two entries");
    cfg.monitor_beta = {beta[0], beta[1]};
  }
  solver.reject_unknown();

  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    throw ConfigError(qualified(msg.substr(0, msg.find(' '))), msg);
  }

  Section flow(doc, "flow", true);
  rc.flow_preset = flow.string("preset");
  rc.flow_params = flow.params("params");
  flow.reject_unknown();
  try {
    rc.scenario.flow = make_flow(rc.flow_preset, rc.flow_params);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("flow", e.what());
  }

  Section init(doc, "init", true);
  rc.init_preset = init.string("preset");
  rc.init_params = init.params("params");
  init.reject_unknown();
  try {
    rc.scenario.s0 = make_initial_state(rc.init_preset, rc.scenario.grid, rc.init_params);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("init", e.what());
  }

  Section study(doc, "study", false);
  rc.study.epsilons = study.list<double>("epsilons");
  rc.study.n_y = study.list<int>("n_y");
  rc.study.n_x = study.list<int>("n_x");
  rc.study.dt = study.list<double>("dt");
  rc.study.n_y_for_dx = study.integer("n_y_for_dx", n_y);
  rc.study.n_x_for_dt = study.integer("n_x_for_dt", n_x);
  rc.study.n_y_for_dt = study.integer("n_y_for_dt", n_y);
  rc.study.t_end_for_dt = study.number("t_end_for_dt", rc.study.t_end_for_dt);
  study.reject_unknown();

  Section output(doc, "output", false);
  rc.output.snapshot_times = output.list<double>("snapshot_times");
  rc.output.field_csv = output.boolean("field_csv", rc.output.field_csv);
  output.reject_unknown();

  rc.canonical = doc.dump();
  return rc;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config", std::string("not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace mhdlab
