#include "ecoacc/config_io.hpp"

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "ecoacc/errors.hpp"

namespace ecoacc {

namespace {

// Resolves a section that may be inline or a file reference. Returns false when absent.
bool section(const nlohmann::json& j, const char* key, const std::string& base_dir, nlohmann::json& out,
             std::string& section_dir) {
  if (!j.contains(key)) return false;
  const auto& s = j.at(key);
  if (s.is_string()) {
    std::filesystem::path p = s.get<std::string>();
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    out = read_json_file(p.string());
    section_dir = p.parent_path().string();
    return true;
  }
  if (!s.is_object()) throw ConfigError(std::string("scenario: section '") + key + "' must be an object or a path");
  out = s;
  section_dir = base_dir;
  return true;
}

}  // namespace

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void write_json_file(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

Scenario scenario_from_json(const nlohmann::json& j, const std::string& base_dir) {
  Scenario scn;
  scn.corridor = default_corridor();
  nlohmann::json s;
  std::string dir;
  if (section(j, "corridor", base_dir, s, dir)) scn.corridor = corridor_from_json(s, dir);
  if (section(j, "vehicle", base_dir, s, dir)) scn.vehicle = vehicle_params_from_json(s);
  if (section(j, "planner", base_dir, s, dir)) scn.planner = planner_config_from_json(s);
  if (section(j, "mpc", base_dir, s, dir)) scn.mpc = mpc_config_from_json(s);
  if (section(j, "traffic", base_dir, s, dir)) scn.traffic = traffic_config_from_json(s);
  try {
    scn.seed = j.value("seed", scn.seed);
    scn.randomize_offsets = j.value("randomize_offsets", scn.randomize_offsets);
    if (j.contains("controller")) scn.controller = controller_from_string(j.at("controller").get<std::string>());
    scn.acc_v_ref = j.value("acc_v_ref", scn.acc_v_ref);
    scn.v_init = j.value("v_init", scn.v_init);
    scn.hard_cap = j.value("hard_cap", scn.hard_cap);
    scn.sensor_noise_std = j.value("sensor_noise_std", scn.sensor_noise_std);
    scn.replan_cooldown = j.value("replan_cooldown", scn.replan_cooldown);
    scn.replan_period = j.value("replan_period", scn.replan_period);
    scn.replan_latency_steps = j.value("replan_latency_steps", scn.replan_latency_steps);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  scn.validate();
  return scn;
}

Scenario load_scenario(const std::string& path) {
  return scenario_from_json(read_json_file(path), std::filesystem::path(path).parent_path().string());
}

nlohmann::json to_json(const Scenario& scn) {
  return {{"corridor", to_json(scn.corridor)},
          {"vehicle", to_json(scn.vehicle)},
          {"planner", to_json(scn.planner)},
          {"mpc", to_json(scn.mpc)},
          {"traffic", to_json(scn.traffic)},
          {"seed", scn.seed},
          {"randomize_offsets", scn.randomize_offsets},
          {"controller", to_string(scn.controller)},
          {"acc_v_ref", scn.acc_v_ref},
          {"v_init", scn.v_init},
          {"hard_cap", scn.hard_cap},
          {"sensor_noise_std", scn.sensor_noise_std},
          {"replan_cooldown", scn.replan_cooldown},
          {"replan_period", scn.replan_period},
          {"replan_latency_steps", scn.replan_latency_steps}};
}

}  // namespace ecoacc
