#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ehmi/calibration.hpp"
#include "ehmi/disclosure.hpp"
#include "ehmi/path.hpp"
#include "ehmi/types.hpp"

namespace ehmi {

struct SchemaMismatch : std::runtime_error {
  explicit SchemaMismatch(const std::string& what) : std::runtime_error(what) {}
};
struct MalformedRow : std::runtime_error {
  MalformedRow(const std::string& what, int line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_no(line) {}
  int line_no;
};

struct Frame {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double v = 0.0;
};

struct Trajectory {
  std::string vehicle_id;
  std::string movement;  // "left-turn" or "straight"
  std::vector<Frame> frames;
};

// Canonical CSV schema: header `t,x,y,v,vehicle_id,movement` (mandatory).
// A header with recognizable aliases (time/frame, speed, id, direction) is
// adapted; anything else raises SchemaMismatch. Values round-trip
// bit-exactly through write/parse.
std::vector<Trajectory> parse_trajectories(std::istream& in);
std::vector<Trajectory> parse_trajectories_file(const std::string& path);
void write_trajectories(std::ostream& out, std::span<const Trajectory> trajs);
void write_trajectories_file(const std::string& path, std::span<const Trajectory> trajs);

struct EncounterGeometry {
  Vec2 conflict;
  double zone_extent = 5.0;
  double vehicle_length = 4.5;
};

struct BuiltEncounter {
  Observation obs;              // onset state + intention label
  int onset_index_turn = -1;    // frame index of the interaction onset
  int onset_index_straight = -1;
  bool straight_crossed_first = false;
  double onset_t = 0.0;
};

// Interaction onset: earliest time both vehicles are within
// detection_radius of the conflict point. Speeds come from the v column;
// accelerations from central differences of v smoothed by a 5-frame moving
// average; d is the front-bumper distance to the zone entry. Empty when one
// vehicle passes the conflict point before the other ever enters the
// detection radius, or the onset state is already inside the zone.
std::optional<BuiltEncounter> build_encounter(const Trajectory& turn,
                                              const Trajectory& straight,
                                              const EncounterGeometry& geom,
                                              const LabelingOptions& lab = {});

// Mean onset acceleration of vehicles that crossed first vs later, keyed by
// movement. Used to refresh the belief constants from data.
struct AccelAverages {
  double first_mean = 0.0;
  double later_mean = 0.0;
  int n_first = 0;
  int n_later = 0;
};
std::map<std::string, AccelAverages> average_accelerations(
    std::span<const BuiltEncounter> encounters);

// Straight-movement averages when present, fallback constants otherwise.
BeliefModel beliefs_from_data(std::span<const BuiltEncounter> encounters,
                              const BeliefModel& fallback = {});

}  // namespace ehmi
