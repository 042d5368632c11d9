#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "ecoacc/traffic_sim.hpp"

namespace ecoacc {

// Scenario file layout: top-level run options plus the sections
// "corridor", "vehicle", "planner", "mpc" and "traffic". A section is either
// an inline object or a path (relative to the scenario file) to a JSON file.
// Missing sections keep their defaults; the corridor defaults to the
// built-in five-intersection route.
Scenario scenario_from_json(const nlohmann::json& j, const std::string& base_dir = ".");
Scenario load_scenario(const std::string& path);
nlohmann::json to_json(const Scenario& scn);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const nlohmann::json& j, const std::string& path);

}  // namespace ecoacc
