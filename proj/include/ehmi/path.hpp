#pragma once

#include <cstddef>
#include <vector>

namespace ehmi {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

struct PathPoint {
  double s = 0.0;  // arc length from the path start [m]
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;    // [rad]
  double curvature = 0.0;  // [1/m], signed (left positive)
};

// Interpolating planar spline through anchor points, parameterized by arc
// length. degree 3 builds a clamped cubic (zero end curvature handled by
// the natural end conditions); degree 1 a polyline.
class SplinePath {
 public:
  static SplinePath fit(const std::vector<Vec2>& anchors, int degree = 3);

  PathPoint at(double s) const;  // s clamped to [0, length()]
  double length() const { return length_; }

  // Arc length of the point closest to p; s_hint bounds the search window
  // forward from the previous projection for stable tracking.
  double project(const Vec2& p, double s_hint) const;

  const std::vector<PathPoint>& samples() const { return table_; }

 private:
  std::vector<PathPoint> table_;  // dense arc-length table
  double length_ = 0.0;
};

}  // namespace ehmi
