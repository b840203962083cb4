#pragma once

#include <optional>

#include "ehmi/types.hpp"

namespace ehmi {

// Constant-acceleration point kinematics with stop-and-stay semantics:
// once the speed hits zero under a non-positive acceleration the vehicle
// stays put, so a target it has not reached by then is never reached.

// Time to cover dist [m] from speed v [m/s] at constant accel a [m/s^2].
// Empty when the vehicle stops (or is stopped) before covering dist.
// |a| below kLinearMotionEps falls back to the uniform-speed solution.
std::optional<double> time_to_reach(double v, double a, double dist);

inline constexpr double kLinearMotionEps = 1e-9;

// Entry into / exit out of the conflict zone for a vehicle state.
std::optional<double> time_to_cross(const VehicleState& s);  // covers s.d
std::optional<double> time_to_clear(const VehicleState& s);  // covers s.D

// Largest constant acceleration self can hold and still enter the zone no
// earlier than the opponent clears it: exact-arrival solution of
//   d_self = v_self*t1 + a*t1^2/2  with t1 = time_to_clear(opponent).
// Empty when the opponent never clears. The swapped_operands variant keeps
// an alternative published operand convention (opponent's d and v against
// its own clear time) selectable for comparison runs; it is not used by
// default anywhere in the toolkit.
struct BoundOptions {
  bool swapped_operands = false;
};
std::optional<double> collision_avoid_accel(const VehicleState& self,
                                            const VehicleState& opponent,
                                            const BoundOptions& opt = {});

// Distance covered before stopping; +inf when the vehicle never stops.
double stop_distance(double v, double a);

}  // namespace ehmi
