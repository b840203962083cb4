#include "ehmi/path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ehmi {

namespace {

// Cubic interpolating spline on a scalar sequence, clamped to the chord
// slope at both ends so vehicle paths keep their lane heading at entry and
// exit. Solved for second derivatives by the Thomas algorithm.
struct CubicSpline1D {
  std::vector<double> t, y, m;  // knots, values, second derivatives

  void build(std::vector<double> knots, std::vector<double> values) {
    t = std::move(knots);
    y = std::move(values);
    const std::size_t n = t.size();
    m.assign(n, 0.0);
    if (n < 3) return;

    std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), r(n, 0.0);
    const double h0 = t[1] - t[0];
    const double hn = t[n - 1] - t[n - 2];
    const double slope0 = (y[1] - y[0]) / h0;
    const double slopen = (y[n - 1] - y[n - 2]) / hn;
    b[0] = 2.0 * h0;
    c[0] = h0;
    r[0] = 6.0 * ((y[1] - y[0]) / h0 - slope0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double hl = t[i] - t[i - 1];
      const double hr = t[i + 1] - t[i];
      a[i] = hl;
      b[i] = 2.0 * (hl + hr);
      c[i] = hr;
      r[i] = 6.0 * ((y[i + 1] - y[i]) / hr - (y[i] - y[i - 1]) / hl);
    }
    a[n - 1] = hn;
    b[n - 1] = 2.0 * hn;
    r[n - 1] = 6.0 * (slopen - (y[n - 1] - y[n - 2]) / hn);

    for (std::size_t i = 1; i < n; ++i) {
      const double w = a[i] / b[i - 1];
      b[i] -= w * c[i - 1];
      r[i] -= w * r[i - 1];
    }
    m[n - 1] = r[n - 1] / b[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) m[i] = (r[i] - c[i] * m[i + 1]) / b[i];
  }

  std::size_t segment(double x) const {
    const auto it = std::upper_bound(t.begin(), t.end(), x);
    const std::size_t j = static_cast<std::size_t>(it - t.begin());
    return std::clamp<std::size_t>(j, 1, t.size() - 1) - 1;
  }

  double value(double x) const {
    const std::size_t i = segment(x);
    const double h = t[i + 1] - t[i];
    const double u = t[i + 1] - x, w = x - t[i];
    return m[i] * u * u * u / (6.0 * h) + m[i + 1] * w * w * w / (6.0 * h) +
           (y[i] / h - m[i] * h / 6.0) * u + (y[i + 1] / h - m[i + 1] * h / 6.0) * w;
  }

  double deriv(double x) const {
    const std::size_t i = segment(x);
    const double h = t[i + 1] - t[i];
    const double u = t[i + 1] - x, w = x - t[i];
    return -m[i] * u * u / (2.0 * h) + m[i + 1] * w * w / (2.0 * h) +
           (y[i + 1] - y[i]) / h - (m[i + 1] - m[i]) * h / 6.0;
  }

  double deriv2(double x) const {
    const std::size_t i = segment(x);
    const double h = t[i + 1] - t[i];
    return (m[i] * (t[i + 1] - x) + m[i + 1] * (x - t[i])) / h;
  }
};

constexpr double kTableStep = 0.05;  // dense-table resolution [m]

}  // namespace

SplinePath SplinePath::fit(const std::vector<Vec2>& anchors, int degree) {
  if (anchors.size() < 2) throw std::invalid_argument("path needs at least two anchors");
  if (degree != 1 && degree != 3)
    throw std::invalid_argument("supported path degrees are 1 and 3");

  std::vector<double> knots(anchors.size(), 0.0);
  for (std::size_t i = 1; i < anchors.size(); ++i) {
    const double dx = anchors[i].x - anchors[i - 1].x;
    const double dy = anchors[i].y - anchors[i - 1].y;
    const double chord = std::hypot(dx, dy);
    if (chord <= 0.0) throw std::invalid_argument("repeated path anchor");
    knots[i] = knots[i - 1] + chord;
  }

  std::vector<double> xs(anchors.size()), ys(anchors.size());
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    xs[i] = anchors[i].x;
    ys[i] = anchors[i].y;
  }

  CubicSpline1D sx, sy;
  if (degree == 3) {
    sx.build(knots, xs);
    sy.build(knots, ys);
  } else {
    sx.t = knots;
    sx.y = xs;
    sx.m.assign(knots.size(), 0.0);
    sy.t = knots;
    sy.y = ys;
    sy.m.assign(knots.size(), 0.0);
  }

  SplinePath path;
  const double total = knots.back();
  const std::size_t steps = std::max<std::size_t>(2, static_cast<std::size_t>(total / kTableStep));
  path.table_.reserve(steps + 1);
  double s = 0.0;
  double px = 0.0, py = 0.0;
  for (std::size_t i = 0; i <= steps; ++i) {
    const double u = total * static_cast<double>(i) / static_cast<double>(steps);
    PathPoint pt;
    pt.x = sx.value(u);
    pt.y = sy.value(u);
    const double dx = sx.deriv(u), dy = sy.deriv(u);
    const double ddx = sx.deriv2(u), ddy = sy.deriv2(u);
    const double norm = std::hypot(dx, dy);
    pt.heading = std::atan2(dy, dx);
    pt.curvature = norm > 0.0 ? (dx * ddy - dy * ddx) / (norm * norm * norm) : 0.0;
    if (i > 0) s += std::hypot(pt.x - px, pt.y - py);
    pt.s = s;
    px = pt.x;
    py = pt.y;
    path.table_.push_back(pt);
  }
  path.length_ = s;
  return path;
}

PathPoint SplinePath::at(double s) const {
  s = std::clamp(s, 0.0, length_);
  const auto cmp = [](const PathPoint& p, double v) { return p.s < v; };
  auto it = std::lower_bound(table_.begin(), table_.end(), s, cmp);
  if (it == table_.begin()) return table_.front();
  if (it == table_.end()) return table_.back();
  const PathPoint& hi = *it;
  const PathPoint& lo = *(it - 1);
  const double span = hi.s - lo.s;
  const double w = span > 0.0 ? (s - lo.s) / span : 0.0;
  PathPoint out;
  out.s = s;
  out.x = lo.x + w * (hi.x - lo.x);
  out.y = lo.y + w * (hi.y - lo.y);
  // interpolate the tangent direction to stay continuous across the wrap
  const double tx = (1.0 - w) * std::cos(lo.heading) + w * std::cos(hi.heading);
  const double ty = (1.0 - w) * std::sin(lo.heading) + w * std::sin(hi.heading);
  out.heading = std::atan2(ty, tx);
  out.curvature = lo.curvature + w * (hi.curvature - lo.curvature);
  return out;
}

double SplinePath::project(const Vec2& p, double s_hint) const {
  std::size_t lo = 0, hi = table_.size() - 1;
  if (s_hint >= 0.0) {
    const auto cmp = [](const PathPoint& q, double v) { return q.s < v; };
    const auto lo_it =
        std::lower_bound(table_.begin(), table_.end(), std::max(0.0, s_hint - 3.0), cmp);
    const auto hi_it =
        std::lower_bound(table_.begin(), table_.end(), s_hint + 12.0, cmp);
    lo = static_cast<std::size_t>(lo_it - table_.begin());
    hi = std::min(table_.size() - 1, static_cast<std::size_t>(hi_it - table_.begin()));
    if (lo > 0) --lo;
  }
  std::size_t best = lo;
  double best_d2 = std::numeric_limits<double>::max();
  for (std::size_t i = lo; i <= hi; ++i) {
    const double dx = table_[i].x - p.x, dy = table_[i].y - p.y;
    const double d2 = dx * dx + dy * dy;
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  // refine within the neighboring segments
  double s_best = table_[best].s;
  for (std::size_t i : {best > 0 ? best - 1 : best, best}) {
    if (i + 1 >= table_.size()) continue;
    const PathPoint& q0 = table_[i];
    const PathPoint& q1 = table_[i + 1];
    const double ex = q1.x - q0.x, ey = q1.y - q0.y;
    const double len2 = ex * ex + ey * ey;
    if (len2 <= 0.0) continue;
    double w = ((p.x - q0.x) * ex + (p.y - q0.y) * ey) / len2;
    w = std::clamp(w, 0.0, 1.0);
    const double cx = q0.x + w * ex - p.x, cy = q0.y + w * ey - p.y;
    if (cx * cx + cy * cy < best_d2) {
      best_d2 = cx * cx + cy * cy;
      s_best = q0.s + w * (q1.s - q0.s);
    }
  }
  return s_best;
}

}  // namespace ehmi
