#pragma once

#include <functional>
#include <vector>

#include "ehmi/path.hpp"

namespace ehmi {

// Kinematic bicycle with rear-wheel-position feedback steering. Control
// inputs update every dt (the trajectory sample step); integration runs on
// substeps with inputs held.
struct TrackerConfig {
  double wheelbase = 2.7;        // [m]
  double dt = 0.1;               // sample step [s]
  int substeps = 10;
  double k_heading = 2.5;        // heading-error gain [1/s]
  double k_lateral = 1.0;        // lateral-error gain [1/m]
  double max_steer = 0.62;       // [rad]
  double max_lateral_dev = 2.0;  // divergence threshold [m]
};

struct TrackSample {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;
  double v = 0.0;
  double s = 0.0;  // arc length of the path projection [m]
};

struct TrackResult {
  std::vector<TrackSample> samples;
  bool diverged = false;  // lateral deviation exceeded max_lateral_dev
};

// accel(t, s, v) supplies the longitudinal command at each sample step.
// Speed is clamped at zero (no reversing). Tracking runs until the path end
// or t >= horizon.
using AccelProfile = std::function<double(double t, double s, double v)>;

TrackResult track_path(const SplinePath& path, double start_s, double start_v,
                       const AccelProfile& accel, double horizon,
                       const TrackerConfig& cfg = {});

}  // namespace ehmi
