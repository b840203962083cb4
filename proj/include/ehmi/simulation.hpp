#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ehmi/disclosure.hpp"
#include "ehmi/path.hpp"
#include "ehmi/tracking.hpp"
#include "ehmi/types.hpp"

namespace ehmi {

// Intersection geometry shared by scenario simulation and the state sweep.
// Stop lines and the conflict point are resolved to arc lengths on each
// path when the map is built.
struct IntersectionMap {
  SplinePath turn_path;
  SplinePath straight_path;
  Vec2 conflict;
  double conflict_s_turn = 0.0;
  double conflict_s_straight = 0.0;
  double stopline_s_turn = 0.0;
  double stopline_s_straight = 0.0;
  double zone_extent = 5.0;    // conflict-zone length along a path [m]
  double vehicle_length = 4.5;  // [m]
};

IntersectionMap build_map(const std::vector<Vec2>& turn_anchors,
                          const std::vector<Vec2>& straight_anchors,
                          const Vec2& stopline_turn, const Vec2& stopline_straight,
                          double zone_extent, double vehicle_length);
IntersectionMap load_map(const std::string& json_path);

// Onset state for given start arc positions and initial (v, a); front
// bumper referenced: d = (zone entry) - start - length/2.
Encounter encounter_from_map(const IntersectionMap& map, double start_s_turn,
                             double v_turn, double a_turn, double start_s_straight,
                             double v_straight, double a_straight);

// Post-encroachment time at the conflict point, vehicle centers referenced.
// Empty unless both trajectories pass within crossing_tol of the point.
struct PetResult {
  double pet = 0.0;       // t_second - t_first, >= 0
  double t_first = 0.0;
  double t_second = 0.0;
  bool straight_first = false;
};
std::optional<PetResult> compute_pet(const std::vector<TrackSample>& turn,
                                     const std::vector<TrackSample>& straight,
                                     const Vec2& conflict, double crossing_tol = 0.5);

// One simulated encounter. Both vehicles hold their initial acceleration up
// to their stop line; past its stop line the turning HV applies the class
// average acceleration (deception uses the belief-conditioned value); once
// either vehicle passes the conflict point both accelerate at post_accel.
// Speeds clamp at zero.
struct ScenarioConfig {
  std::string name;
  IntersectionMap map;
  double start_s_turn = 0.0;
  double start_s_straight = 0.0;
  double v0_turn = 5.0;
  double a0_turn = 0.0;
  double v0_straight = 10.0;
  double a0_straight = 0.0;
  double hv_accel_plain = -1.5;      // after the HV stop line, no deception
  double hv_accel_deception = -2.5;  // after the HV stop line, deception
  double post_accel = 2.0;
  double horizon = 60.0;
};
ScenarioConfig load_scenario(const std::string& json_path);

struct SimResult {
  TrackResult turn;
  TrackResult straight;
  std::optional<PetResult> pet;
};
SimResult simulate_encounter(const ScenarioConfig& sc, bool deception);

// Deceived-HV response accelerations per expected class (straight vehicle
// first = o21 expected, straight yields = o12 expected).
struct HvResponseAccels {
  double o21_plain = -1.5;
  double o21_deception = -2.5;
  double o12_plain = -0.5;
  double o12_deception = 0.0;
};

struct GridRange {
  double lo = 0.0;
  double hi = 0.0;
  int n = 1;
  double at(int i) const;
};

struct SweepSpec {
  GridRange v_turn, a_turn, v_straight, a_straight;
  bool simulate_pairs = true;  // run the paired PET simulation per success
  HvResponseAccels response;
  double post_accel = 2.0;
  double horizon = 60.0;
  double start_s_turn = 0.0;
  double start_s_straight = 0.0;
};

struct SweepConfig {
  IntersectionMap map;
  SweepSpec spec;
};
SweepConfig load_sweep_config(const std::string& json_path);

struct SweepCell {
  double v_turn = 0.0, a_turn = 0.0, v_straight = 0.0, a_straight = 0.0;
  bool skipped = false;  // undefined kinematics
  std::optional<DisclosurePlan> plan;
  std::optional<double> pet_plain;
  std::optional<double> pet_deception;
};

struct SweepResult {
  std::vector<SweepCell> cells;
  int total = 0;
  int skipped = 0;
  int success_straight_first = 0;  // deception successes, expected o21
  int success_straight_yields = 0; // deception successes, expected o12
  double success_fraction() const;
  double fraction_straight_first() const;
  double fraction_straight_yields() const;
};

SweepResult sweep_initial_states(const IntersectionMap& map, const SweepSpec& spec,
                                 const PayoffParams& params, double delta,
                                 const BeliefModel& beliefs);

}  // namespace ehmi
