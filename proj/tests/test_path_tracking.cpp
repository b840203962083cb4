#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ehmi/path.hpp"
#include "ehmi/tracking.hpp"

using namespace ehmi;

TEST_CASE("straight-line spline is flat") {
  const auto path = SplinePath::fit({{0, 0}, {10, 0}, {20, 0}, {30, 0}, {40, 0}});
  CHECK(path.length() == doctest::Approx(40.0).epsilon(1e-6));
  for (double s : {0.0, 7.3, 18.0, 33.3, 40.0}) {
    const auto p = path.at(s);
    CHECK(p.x == doctest::Approx(s).epsilon(1e-6));
    CHECK(std::abs(p.y) < 1e-9);
    CHECK(std::abs(p.heading) < 1e-9);
    CHECK(std::abs(p.curvature) < 1e-6);
  }
  CHECK(path.project({12.0, 3.0}, -1.0) == doctest::Approx(12.0).epsilon(1e-4));
  // clamping outside the domain
  CHECK(path.at(-5.0).x == doctest::Approx(0.0));
  CHECK(path.at(100.0).x == doctest::Approx(40.0).epsilon(1e-6));
}

TEST_CASE("degree-1 polyline keeps corners") {
  const auto path = SplinePath::fit({{0, 0}, {10, 0}, {10, 10}}, 1);
  CHECK(path.length() == doctest::Approx(20.0).epsilon(1e-9));
  const auto p = path.at(15.0);
  CHECK(p.x == doctest::Approx(10.0).epsilon(1e-9));
  CHECK(p.y == doctest::Approx(5.0).epsilon(1e-9));
}

TEST_CASE("quarter circle has roughly constant curvature") {
  std::vector<Vec2> anchors;
  const double r = 20.0;
  for (int i = 0; i <= 8; ++i) {
    const double th = M_PI_2 * i / 8.0;
    anchors.push_back({r * std::sin(th), r * (1.0 - std::cos(th))});
  }
  const auto path = SplinePath::fit(anchors);
  CHECK(path.length() > 31.3);   // exact arc: pi*10 = 31.42
  CHECK(path.length() < 31.55);
  const auto mid = path.at(path.length() / 2.0);
  CHECK(mid.curvature > 0.045);  // exact: 1/20
  CHECK(mid.curvature < 0.055);
}

TEST_CASE("tracking a straight path under constant acceleration") {
  const auto path = SplinePath::fit({{0, 0}, {20, 0}, {40, 0}});
  const auto res = track_path(path, 0.0, 5.0,
                              [](double, double, double) { return 1.0; }, 2.05);
  CHECK_FALSE(res.diverged);
  REQUIRE(res.samples.size() == 21);  // t = 0.0 .. 2.0 at dt = 0.1
  CHECK(res.samples.front().t == 0.0);
  CHECK(res.samples.front().v == 5.0);
  const auto& last = res.samples.back();
  CHECK(last.t == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(last.v == doctest::Approx(7.0).epsilon(1e-9));
  CHECK(last.s == doctest::Approx(12.0).epsilon(1e-3));  // 5t + t^2/2
  CHECK(std::abs(last.y) < 1e-6);
}

TEST_CASE("braking to a stop holds position") {
  const auto path = SplinePath::fit({{0, 0}, {20, 0}, {40, 0}});
  const auto res = track_path(path, 0.0, 4.0,
                              [](double, double, double) { return -2.0; }, 3.05);
  CHECK_FALSE(res.diverged);
  REQUIRE(res.samples.size() == 31);
  const auto& last = res.samples.back();
  CHECK(last.v == 0.0);  // stopped at t = 2, never reverses
  CHECK(last.s == doctest::Approx(4.0).epsilon(1e-2));
  for (const auto& smp : res.samples) CHECK(smp.v >= 0.0);
}

TEST_CASE("tracking stops at the path end") {
  const auto path = SplinePath::fit({{0, 0}, {10, 0}, {20, 0}});
  const auto res = track_path(path, 0.0, 5.0,
                              [](double, double, double) { return 0.0; }, 10.0);
  CHECK_FALSE(res.diverged);
  const auto& last = res.samples.back();
  CHECK(last.t == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(last.s == doctest::Approx(20.0).epsilon(1e-2));
}

TEST_CASE("an untrackable corner at speed reports divergence") {
  const auto path =
      SplinePath::fit({{0, 0}, {25, 0}, {25.2, 0.2}, {25.2, 25}}, 1);
  const auto res = track_path(path, 0.0, 15.0,
                              [](double, double, double) { return 0.0; }, 10.0);
  CHECK(res.diverged);
  CHECK_FALSE(res.samples.empty());
}

TEST_CASE("hard braking never yields negative speed") {
  const auto path = SplinePath::fit({{0, 0}, {20, 0}, {40, 0}});
  const auto res = track_path(path, 0.0, 2.0,
                              [](double, double, double) { return -5.0; }, 2.0);
  for (const auto& smp : res.samples) CHECK(smp.v >= 0.0);
}
