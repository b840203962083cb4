#pragma once

#include <string>

#include "ehmi/calibration.hpp"
#include "ehmi/data_io.hpp"
#include "ehmi/disclosure.hpp"
#include "ehmi/kinematics.hpp"

namespace ehmi {

// Versioned default configuration; all tunable constants live in the
// config file, not in code.
struct Defaults {
  int version = 1;
  double delta_fallback = 0.5;
  BeliefModel beliefs;
  EncounterGeometry geometry;
  LabelingOptions labeling;
  BoundOptions bound;
  std::string params_file;  // resolved relative to the config file
};

Defaults load_defaults(const std::string& json_path);

}  // namespace ehmi
