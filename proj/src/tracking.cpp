#include "ehmi/tracking.hpp"

#include <algorithm>
#include <cmath>

namespace ehmi {

namespace {

double wrap_angle(double a) {
  while (a > M_PI) a -= 2.0 * M_PI;
  while (a < -M_PI) a += 2.0 * M_PI;
  return a;
}

}  // namespace

TrackResult track_path(const SplinePath& path, double start_s, double start_v,
                       const AccelProfile& accel, double horizon,
                       const TrackerConfig& cfg) {
  TrackResult res;
  const PathPoint start = path.at(start_s);

  double x = start.x, y = start.y, heading = start.heading;
  double v = std::max(0.0, start_v);
  double s = start.s;
  double t = 0.0;
  long step = 0;

  res.samples.push_back({t, x, y, heading, v, s});

  const double sub_dt = cfg.dt / static_cast<double>(cfg.substeps);
  while (t < horizon - 0.5 * cfg.dt && s < path.length() - 1e-6) {
    const double a_cmd = accel(t, s, v);

    // Rear-wheel feedback on the projected path point, held across the step.
    const PathPoint ref = path.at(s);
    const double dxp = x - ref.x, dyp = y - ref.y;
    // signed lateral error, positive when left of the path
    const double lat = -dxp * std::sin(ref.heading) + dyp * std::cos(ref.heading);
    const double herr = wrap_angle(heading - ref.heading);
    const double vc = std::max(v, 0.3);  // keep steering authority near standstill
    const double sinc = std::fabs(herr) > 1e-6 ? std::sin(herr) / herr : 1.0;
    const double omega = vc * ref.curvature * std::cos(herr) /
                             std::max(1.0 - ref.curvature * lat, 0.2) -
                         cfg.k_heading * std::fabs(vc) * herr -
                         cfg.k_lateral * vc * sinc * lat;
    double steer = std::atan2(cfg.wheelbase * omega, vc);
    steer = std::clamp(steer, -cfg.max_steer, cfg.max_steer);

    for (int k = 0; k < cfg.substeps; ++k) {
      const double v_next = std::max(0.0, v + a_cmd * sub_dt);
      const double ds = 0.5 * (v + v_next) * sub_dt;  // exact under constant accel
      x += ds * std::cos(heading);
      y += ds * std::sin(heading);
      heading = wrap_angle(heading + ds * std::tan(steer) / cfg.wheelbase);
      v = v_next;
    }
    t = static_cast<double>(++step) * cfg.dt;  // avoids accumulation drift
    s = path.project({x, y}, s);
    res.samples.push_back({t, x, y, heading, v, s});

    const PathPoint chk = path.at(s);
    const double dev = std::hypot(x - chk.x, y - chk.y);
    if (dev > cfg.max_lateral_dev) {
      res.diverged = true;
      break;
    }
  }
  return res;
}

}  // namespace ehmi
