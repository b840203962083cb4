#include "ehmi/kinematics.hpp"

#include <cmath>
#include <limits>

namespace ehmi {

std::optional<double> time_to_reach(double v, double a, double dist) {
  if (!(dist > 0.0)) return 0.0;
  if (std::fabs(a) < kLinearMotionEps) {
    if (v <= 0.0) return std::nullopt;
    return dist / v;
  }
  const double disc = v * v + 2.0 * a * dist;
  if (a < 0.0 && disc < 0.0) return std::nullopt;  // stops short of dist
  // Smallest nonnegative root of v t + a t^2 / 2 = dist, written without
  // subtractive cancellation. For a < 0 this is the first crossing, which
  // happens at or before the stop time.
  const double denom = v + std::sqrt(std::max(disc, 0.0));
  if (denom <= 0.0) return std::nullopt;  // stopped and not accelerating
  return 2.0 * dist / denom;
}

std::optional<double> time_to_cross(const VehicleState& s) {
  validate(s);
  return time_to_reach(s.v, s.a, s.d);
}

std::optional<double> time_to_clear(const VehicleState& s) {
  validate(s);
  return time_to_reach(s.v, s.a, s.D);
}

std::optional<double> collision_avoid_accel(const VehicleState& self,
                                            const VehicleState& opponent,
                                            const BoundOptions& opt) {
  validate(self);
  const auto t1 = time_to_clear(opponent);
  if (!t1 || *t1 <= 0.0) return std::nullopt;
  if (opt.swapped_operands) {
    // Alternative published operand convention: opponent distance and speed
    // against its own clear time. Kept only for comparison runs.
    return 2.0 * (opponent.d - opponent.v * *t1) / (*t1 * *t1);
  }
  return 2.0 * (self.d - self.v * *t1) / (*t1 * *t1);
}

double stop_distance(double v, double a) {
  if (a >= 0.0) return std::numeric_limits<double>::infinity();
  return v * v / (2.0 * -a);
}

}  // namespace ehmi
