#include "ehmi/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace ehmi {

namespace {

Vec2 closest_crossing(const SplinePath& a, const SplinePath& b) {
  // Dense mutual search is fine at map-build time.
  double best = std::numeric_limits<double>::max();
  Vec2 out;
  for (const PathPoint& pa : a.samples()) {
    for (const PathPoint& pb : b.samples()) {
      const double dx = pa.x - pb.x, dy = pa.y - pb.y;
      const double d2 = dx * dx + dy * dy;
      if (d2 < best) {
        best = d2;
        out = {0.5 * (pa.x + pb.x), 0.5 * (pa.y + pb.y)};
      }
    }
  }
  if (best > 0.25 * 0.25)
    throw std::invalid_argument("paths do not cross (closest approach above 0.25 m)");
  return out;
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

std::vector<Vec2> parse_points(const nlohmann::json& arr) {
  std::vector<Vec2> pts;
  for (const auto& p : arr) pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  return pts;
}

IntersectionMap parse_map(const nlohmann::json& j) {
  const auto turn = parse_points(j.at("turn_anchors"));
  const auto straight = parse_points(j.at("straight_anchors"));
  const auto sl_turn = parse_points(nlohmann::json::array({j.at("stopline_turn")}))[0];
  const auto sl_straight =
      parse_points(nlohmann::json::array({j.at("stopline_straight")}))[0];
  return build_map(turn, straight, sl_turn, sl_straight,
                   j.value("zone_extent", 5.0), j.value("vehicle_length", 4.5));
}

}  // namespace

IntersectionMap build_map(const std::vector<Vec2>& turn_anchors,
                          const std::vector<Vec2>& straight_anchors,
                          const Vec2& stopline_turn, const Vec2& stopline_straight,
                          double zone_extent, double vehicle_length) {
  IntersectionMap map;
  map.turn_path = SplinePath::fit(turn_anchors);
  map.straight_path = SplinePath::fit(straight_anchors);
  map.conflict = closest_crossing(map.turn_path, map.straight_path);
  map.conflict_s_turn = map.turn_path.project(map.conflict, -1.0);
  map.conflict_s_straight = map.straight_path.project(map.conflict, -1.0);
  map.stopline_s_turn = map.turn_path.project(stopline_turn, -1.0);
  map.stopline_s_straight = map.straight_path.project(stopline_straight, -1.0);
  map.zone_extent = zone_extent;
  map.vehicle_length = vehicle_length;
  return map;
}

IntersectionMap load_map(const std::string& json_path) {
  return parse_map(read_json(json_path));
}

Encounter encounter_from_map(const IntersectionMap& map, double start_s_turn,
                             double v_turn, double a_turn, double start_s_straight,
                             double v_straight, double a_straight) {
  Encounter e;
  const double half_zone = 0.5 * map.zone_extent;
  const double half_len = 0.5 * map.vehicle_length;
  e.turn.v = v_turn;
  e.turn.a = a_turn;
  e.turn.d = map.conflict_s_turn - half_zone - start_s_turn - half_len;
  e.turn.D = e.turn.d + map.zone_extent + map.vehicle_length;
  e.straight.v = v_straight;
  e.straight.a = a_straight;
  e.straight.d = map.conflict_s_straight - half_zone - start_s_straight - half_len;
  e.straight.D = e.straight.d + map.zone_extent + map.vehicle_length;
  validate(e.turn);
  validate(e.straight);
  return e;
}

namespace {

// Time of the trajectory's closest approach to the conflict point, refined
// by the parabola through the neighboring squared distances.
std::optional<double> crossing_time(const std::vector<TrackSample>& traj,
                                    const Vec2& conflict, double tol) {
  if (traj.empty()) return std::nullopt;
  std::size_t best = 0;
  double best_d2 = std::numeric_limits<double>::max();
  std::vector<double> d2(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double dx = traj[i].x - conflict.x, dy = traj[i].y - conflict.y;
    d2[i] = dx * dx + dy * dy;
    if (d2[i] < best_d2) {
      best_d2 = d2[i];
      best = i;
    }
  }
  double t = traj[best].t;
  double min_d2 = best_d2;
  if (best > 0 && best + 1 < traj.size()) {
    const double denom = d2[best - 1] - 2.0 * d2[best] + d2[best + 1];
    if (denom > 1e-12) {
      const double h = traj[best + 1].t - traj[best].t;
      const double slope = d2[best - 1] - d2[best + 1];
      t += 0.5 * h * slope / denom;
      // vertex of the parabola; exact for straight constant-speed motion,
      // so the gate does not depend on where samples land around the point
      min_d2 = best_d2 - slope * slope / (8.0 * denom);
    }
  }
  if (min_d2 > tol * tol) return std::nullopt;
  return t;
}

}  // namespace

std::optional<PetResult> compute_pet(const std::vector<TrackSample>& turn,
                                     const std::vector<TrackSample>& straight,
                                     const Vec2& conflict, double crossing_tol) {
  const auto t_turn = crossing_time(turn, conflict, crossing_tol);
  const auto t_straight = crossing_time(straight, conflict, crossing_tol);
  if (!t_turn || !t_straight) return std::nullopt;
  PetResult r;
  r.straight_first = *t_straight <= *t_turn;
  r.t_first = std::min(*t_straight, *t_turn);
  r.t_second = std::max(*t_straight, *t_turn);
  r.pet = r.t_second - r.t_first;
  return r;
}

SimResult simulate_encounter(const ScenarioConfig& sc, bool deception) {
  const double hv_accel = deception ? sc.hv_accel_deception : sc.hv_accel_plain;
  const double conflict_turn = sc.map.conflict_s_turn;
  const double conflict_straight = sc.map.conflict_s_straight;

  const auto hv_profile = [&](double post_from) {
    return [&, post_from](double t, double s, double) {
      if (t >= post_from) return sc.post_accel;
      return s >= sc.map.stopline_s_turn ? hv_accel : sc.a0_turn;
    };
  };
  const auto av_profile = [&](double post_from) {
    return [&, post_from](double t, double, double) {
      if (t >= post_from) return sc.post_accel;
      return sc.a0_straight;
    };
  };

  const double never = std::numeric_limits<double>::infinity();
  // Pass 1 finds the first conflict crossing without the joint speed-up;
  // both profiles agree with the final run up to that event, so the event
  // time is exact.
  const TrackResult pre_turn = track_path(sc.map.turn_path, sc.start_s_turn, sc.v0_turn,
                                          hv_profile(never), sc.horizon);
  const TrackResult pre_straight =
      track_path(sc.map.straight_path, sc.start_s_straight, sc.v0_straight,
                 av_profile(never), sc.horizon);

  const auto first_reach = [](const TrackResult& tr, double target_s) {
    for (const TrackSample& smp : tr.samples)
      if (smp.s >= target_s) return smp.t;
    return std::numeric_limits<double>::infinity();
  };
  const double t_cross = std::min(first_reach(pre_turn, conflict_turn),
                                  first_reach(pre_straight, conflict_straight));

  SimResult res;
  res.turn = track_path(sc.map.turn_path, sc.start_s_turn, sc.v0_turn,
                        hv_profile(t_cross), sc.horizon);
  res.straight = track_path(sc.map.straight_path, sc.start_s_straight, sc.v0_straight,
                            av_profile(t_cross), sc.horizon);
  res.pet = compute_pet(res.turn.samples, res.straight.samples, sc.map.conflict);
  return res;
}

ScenarioConfig load_scenario(const std::string& json_path) {
  const auto j = read_json(json_path);
  ScenarioConfig sc;
  sc.name = j.value("name", "");
  sc.map = parse_map(j.at("map"));
  sc.start_s_turn = j.value("start_s_turn", 0.0);
  sc.start_s_straight = j.value("start_s_straight", 0.0);
  sc.v0_turn = j.at("v0_turn").get<double>();
  sc.a0_turn = j.at("a0_turn").get<double>();
  sc.v0_straight = j.at("v0_straight").get<double>();
  sc.a0_straight = j.at("a0_straight").get<double>();
  sc.hv_accel_plain = j.at("hv_accel_plain").get<double>();
  sc.hv_accel_deception = j.at("hv_accel_deception").get<double>();
  sc.post_accel = j.value("post_accel", 2.0);
  sc.horizon = j.value("horizon", 60.0);
  return sc;
}

double GridRange::at(int i) const {
  if (n <= 1) return lo;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

SweepConfig load_sweep_config(const std::string& json_path) {
  const auto j = read_json(json_path);
  SweepConfig cfg;
  cfg.map = parse_map(j.at("map"));
  const auto range = [&](const char* key) {
    const auto& r = j.at(key);
    return GridRange{r.at("lo").get<double>(), r.at("hi").get<double>(),
                     r.at("n").get<int>()};
  };
  cfg.spec.v_turn = range("v_turn");
  cfg.spec.a_turn = range("a_turn");
  cfg.spec.v_straight = range("v_straight");
  cfg.spec.a_straight = range("a_straight");
  cfg.spec.simulate_pairs = j.value("simulate_pairs", true);
  if (j.contains("response")) {
    const auto& r = j.at("response");
    cfg.spec.response.o21_plain = r.value("o21_plain", -1.5);
    cfg.spec.response.o21_deception = r.value("o21_deception", -2.5);
    cfg.spec.response.o12_plain = r.value("o12_plain", -0.5);
    cfg.spec.response.o12_deception = r.value("o12_deception", 0.0);
  }
  cfg.spec.post_accel = j.value("post_accel", 2.0);
  cfg.spec.horizon = j.value("horizon", 60.0);
  cfg.spec.start_s_turn = j.value("start_s_turn", 0.0);
  cfg.spec.start_s_straight = j.value("start_s_straight", 0.0);
  return cfg;
}

double SweepResult::success_fraction() const {
  if (total == 0) return 0.0;
  return static_cast<double>(success_straight_first + success_straight_yields) /
         static_cast<double>(total);
}

double SweepResult::fraction_straight_first() const {
  if (total == 0) return 0.0;
  return static_cast<double>(success_straight_first) / static_cast<double>(total);
}

double SweepResult::fraction_straight_yields() const {
  if (total == 0) return 0.0;
  return static_cast<double>(success_straight_yields) / static_cast<double>(total);
}

SweepResult sweep_initial_states(const IntersectionMap& map, const SweepSpec& spec,
                                 const PayoffParams& params, double delta,
                                 const BeliefModel& beliefs) {
  SweepResult res;
  for (int iv = 0; iv < spec.v_turn.n; ++iv) {
    for (int ia = 0; ia < spec.a_turn.n; ++ia) {
      for (int jv = 0; jv < spec.v_straight.n; ++jv) {
        for (int ja = 0; ja < spec.a_straight.n; ++ja) {
          SweepCell cell;
          cell.v_turn = spec.v_turn.at(iv);
          cell.a_turn = spec.a_turn.at(ia);
          cell.v_straight = spec.v_straight.at(jv);
          cell.a_straight = spec.a_straight.at(ja);
          ++res.total;

          Encounter enc;
          try {
            enc = encounter_from_map(map, spec.start_s_turn, cell.v_turn, cell.a_turn,
                                     spec.start_s_straight, cell.v_straight,
                                     cell.a_straight);
          } catch (const std::invalid_argument&) {
            cell.skipped = true;
          }
          if (!cell.skipped) {
            cell.plan = decide(enc, params, delta, beliefs);
            if (!cell.plan) cell.skipped = true;
          }
          if (cell.skipped) {
            ++res.skipped;
            res.cells.push_back(cell);
            continue;
          }

          if (cell.plan->deception_success) {
            const bool straight_first = cell.plan->expected == Outcome::O21;
            if (straight_first)
              ++res.success_straight_first;
            else if (cell.plan->expected == Outcome::O12)
              ++res.success_straight_yields;
            if (spec.simulate_pairs &&
                (cell.plan->expected == Outcome::O21 ||
                 cell.plan->expected == Outcome::O12)) {
              ScenarioConfig sc;
              sc.map = map;
              sc.start_s_turn = spec.start_s_turn;
              sc.start_s_straight = spec.start_s_straight;
              sc.v0_turn = cell.v_turn;
              sc.a0_turn = cell.a_turn;
              sc.v0_straight = cell.v_straight;
              sc.a0_straight = cell.a_straight;
              sc.hv_accel_plain =
                  straight_first ? spec.response.o21_plain : spec.response.o12_plain;
              sc.hv_accel_deception = straight_first ? spec.response.o21_deception
                                                     : spec.response.o12_deception;
              sc.post_accel = spec.post_accel;
              sc.horizon = spec.horizon;
              const SimResult plain = simulate_encounter(sc, false);
              const SimResult dec = simulate_encounter(sc, true);
              if (plain.pet) cell.pet_plain = plain.pet->pet;
              if (dec.pet) cell.pet_deception = dec.pet->pet;
            }
          }
          res.cells.push_back(cell);
        }
      }
    }
  }
  return res;
}

}  // namespace ehmi
