#include "ehmi/config.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace ehmi {

Defaults load_defaults(const std::string& json_path) {
  std::ifstream in(json_path);
  if (!in) throw std::runtime_error("cannot open " + json_path);
  nlohmann::json j;
  in >> j;

  Defaults d;
  d.version = j.value("version", 1);
  d.delta_fallback = j.value("delta_fallback", 0.5);
  if (j.contains("beliefs")) {
    const auto& b = j.at("beliefs");
    d.beliefs.accel_when_rush = b.value("accel_when_rush", d.beliefs.accel_when_rush);
    d.beliefs.accel_when_yield = b.value("accel_when_yield", d.beliefs.accel_when_yield);
  }
  if (j.contains("geometry")) {
    const auto& g = j.at("geometry");
    if (g.contains("conflict")) {
      d.geometry.conflict.x = g.at("conflict").at(0).get<double>();
      d.geometry.conflict.y = g.at("conflict").at(1).get<double>();
    }
    d.geometry.zone_extent = g.value("zone_extent", d.geometry.zone_extent);
    d.geometry.vehicle_length = g.value("vehicle_length", d.geometry.vehicle_length);
  }
  if (j.contains("labeling")) {
    const auto& l = j.at("labeling");
    d.labeling.detection_radius = l.value("detection_radius", d.labeling.detection_radius);
    d.labeling.window_s = l.value("window_s", d.labeling.window_s);
    d.labeling.yield_decel = l.value("yield_decel", d.labeling.yield_decel);
  }
  if (j.contains("bound")) {
    d.bound.swapped_operands =
        j.at("bound").value("swapped_operands", d.bound.swapped_operands);
  }
  if (j.contains("params_file")) {
    const std::filesystem::path base = std::filesystem::path(json_path).parent_path();
    d.params_file = (base / j.at("params_file").get<std::string>()).string();
  }
  return d;
}

}  // namespace ehmi
