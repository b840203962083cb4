#include "ehmi/data_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <istream>
#include <ostream>
#include <sstream>

namespace ehmi {

namespace {

constexpr const char* kTurnMovement = "left-turn";
constexpr const char* kStraightMovement = "straight";

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// canonical column index: 0=t 1=x 2=y 3=v 4=vehicle_id 5=movement
int canonical_column(const std::string& name) {
  const std::string n = lower(name);
  if (n == "t" || n == "time" || n == "timestamp") return 0;
  if (n == "x") return 1;
  if (n == "y") return 2;
  if (n == "v" || n == "speed" || n == "velocity") return 3;
  if (n == "vehicle_id" || n == "id" || n == "track_id" || n == "vehicle") return 4;
  if (n == "movement" || n == "direction" || n == "maneuver") return 5;
  return -1;
}

double parse_double(const std::string& tok, const char* what, int line) {
  double value = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value))
    throw MalformedRow(std::string("invalid ") + what + " '" + tok + "'", line);
  return value;
}

std::string format_double(double v) {
  std::array<char, 32> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

double dist_to(const Frame& f, const Vec2& p) {
  return std::hypot(f.x - p.x, f.y - p.y);
}

// central difference of v over t, then centered 5-frame moving average
std::vector<double> accel_series(const std::vector<Frame>& f) {
  const std::size_t n = f.size();
  std::vector<double> raw(n, 0.0);
  if (n >= 2) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t lo = i == 0 ? 0 : i - 1;
      const std::size_t hi = i + 1 < n ? i + 1 : n - 1;
      raw[i] = (f[hi].v - f[lo].v) / (f[hi].t - f[lo].t);
    }
  }
  std::vector<double> smooth(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= 2 ? i - 2 : 0;
    const std::size_t hi = std::min(i + 2, n == 0 ? 0 : n - 1);
    double sum = 0.0;
    for (std::size_t k = lo; k <= hi; ++k) sum += raw[k];
    smooth[i] = sum / static_cast<double>(hi - lo + 1);
  }
  return smooth;
}

int first_within(const Trajectory& traj, const Vec2& p, double radius) {
  for (std::size_t i = 0; i < traj.frames.size(); ++i)
    if (dist_to(traj.frames[i], p) <= radius) return static_cast<int>(i);
  return -1;
}

int closest_index(const Trajectory& traj, const Vec2& p) {
  int best = -1;
  double best_d = std::numeric_limits<double>::max();
  for (std::size_t i = 0; i < traj.frames.size(); ++i) {
    const double d = dist_to(traj.frames[i], p);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(i);
    }
  }
  return best;
}

int index_at_or_after(const Trajectory& traj, double t) {
  for (std::size_t i = 0; i < traj.frames.size(); ++i)
    if (traj.frames[i].t >= t) return static_cast<int>(i);
  return -1;
}

double window_mean(const std::vector<Frame>& frames, const std::vector<double>& accel,
                   int from, double window_s) {
  const double t_end = frames[from].t + window_s;
  double sum = 0.0;
  int n = 0;
  for (std::size_t i = static_cast<std::size_t>(from); i < frames.size(); ++i) {
    if (frames[i].t > t_end) break;
    sum += accel[i];
    ++n;
  }
  return sum / static_cast<double>(n);
}

}  // namespace

std::vector<Trajectory> parse_trajectories(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw SchemaMismatch("empty input, header expected");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const auto header = split_csv(line);
  std::array<int, 6> col{};
  col.fill(-1);
  for (std::size_t i = 0; i < header.size(); ++i) {
    const int c = canonical_column(header[i]);
    if (c < 0) throw SchemaMismatch("unknown column '" + header[i] + "'");
    if (col[c] >= 0) throw SchemaMismatch("duplicate column '" + header[i] + "'");
    col[c] = static_cast<int>(i);
  }
  static constexpr std::array<const char*, 6> kNames = {"t", "x",          "y",
                                                        "v", "vehicle_id", "movement"};
  for (std::size_t c = 0; c < col.size(); ++c)
    if (col[c] < 0) throw SchemaMismatch(std::string("missing column '") + kNames[c] + "'");
  const std::size_t ncols = header.size();

  std::vector<Trajectory> trajs;
  std::map<std::string, std::size_t> by_id;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != ncols)
      throw MalformedRow("expected " + std::to_string(ncols) + " fields, got " +
                             std::to_string(fields.size()),
                         line_no);
    Frame f;
    f.t = parse_double(fields[static_cast<std::size_t>(col[0])], "t", line_no);
    f.x = parse_double(fields[static_cast<std::size_t>(col[1])], "x", line_no);
    f.y = parse_double(fields[static_cast<std::size_t>(col[2])], "y", line_no);
    f.v = parse_double(fields[static_cast<std::size_t>(col[3])], "v", line_no);
    const std::string& id = fields[static_cast<std::size_t>(col[4])];
    const std::string& movement = fields[static_cast<std::size_t>(col[5])];
    if (id.empty()) throw MalformedRow("empty vehicle_id", line_no);

    const auto it = by_id.find(id);
    if (it == by_id.end()) {
      by_id.emplace(id, trajs.size());
      trajs.push_back({id, movement, {f}});
    } else {
      Trajectory& traj = trajs[it->second];
      if (traj.movement != movement)
        throw MalformedRow("movement changes within vehicle '" + id + "'", line_no);
      if (!traj.frames.empty() && f.t <= traj.frames.back().t)
        throw MalformedRow("non-increasing time for vehicle '" + id + "'", line_no);
      traj.frames.push_back(f);
    }
  }
  return trajs;
}

std::vector<Trajectory> parse_trajectories_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_trajectories(in);
}

void write_trajectories(std::ostream& out, std::span<const Trajectory> trajs) {
  out << "t,x,y,v,vehicle_id,movement\n";
  for (const Trajectory& traj : trajs)
    for (const Frame& f : traj.frames)
      out << format_double(f.t) << ',' << format_double(f.x) << ','
          << format_double(f.y) << ',' << format_double(f.v) << ','
          << traj.vehicle_id << ',' << traj.movement << '\n';
}

void write_trajectories_file(const std::string& path,
                             std::span<const Trajectory> trajs) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_trajectories(out, trajs);
}

std::optional<BuiltEncounter> build_encounter(const Trajectory& turn,
                                              const Trajectory& straight,
                                              const EncounterGeometry& geom,
                                              const LabelingOptions& lab) {
  if (turn.frames.size() < 3 || straight.frames.size() < 3) return std::nullopt;

  const int enter_turn = first_within(turn, geom.conflict, lab.detection_radius);
  const int enter_straight = first_within(straight, geom.conflict, lab.detection_radius);
  if (enter_turn < 0 || enter_straight < 0) return std::nullopt;

  const int pass_turn = closest_index(turn, geom.conflict);
  const int pass_straight = closest_index(straight, geom.conflict);
  const double t_pass_turn = turn.frames[static_cast<std::size_t>(pass_turn)].t;
  const double t_pass_straight =
      straight.frames[static_cast<std::size_t>(pass_straight)].t;
  // one vehicle was already through before the other showed up
  if (t_pass_turn < straight.frames[static_cast<std::size_t>(enter_straight)].t)
    return std::nullopt;
  if (t_pass_straight < turn.frames[static_cast<std::size_t>(enter_turn)].t)
    return std::nullopt;

  const double onset_t =
      std::max(turn.frames[static_cast<std::size_t>(enter_turn)].t,
               straight.frames[static_cast<std::size_t>(enter_straight)].t);
  const int i_turn = index_at_or_after(turn, onset_t);
  const int i_straight = index_at_or_after(straight, onset_t);
  if (i_turn < 0 || i_straight < 0) return std::nullopt;

  const auto accel_turn = accel_series(turn.frames);
  const auto accel_straight = accel_series(straight.frames);

  const double margin = 0.5 * geom.zone_extent + 0.5 * geom.vehicle_length;
  const auto state_at = [&](const Trajectory& traj, const std::vector<double>& accel,
                            int i) {
    const Frame& f = traj.frames[static_cast<std::size_t>(i)];
    VehicleState st;
    st.v = std::max(f.v, 0.0);
    st.a = accel[static_cast<std::size_t>(i)];
    st.d = dist_to(f, geom.conflict) - margin;
    st.D = st.d + geom.zone_extent + geom.vehicle_length;
    return st;
  };

  BuiltEncounter be;
  be.obs.enc.id = turn.vehicle_id + "+" + straight.vehicle_id;
  be.obs.enc.turn = state_at(turn, accel_turn, i_turn);
  be.obs.enc.straight = state_at(straight, accel_straight, i_straight);
  try {
    validate(be.obs.enc.turn);
    validate(be.obs.enc.straight);
  } catch (const std::invalid_argument&) {
    return std::nullopt;  // onset already inside the zone, or degenerate state
  }

  be.obs.label = label_intention(window_mean(turn.frames, accel_turn, i_turn, lab.window_s),
                                 window_mean(straight.frames, accel_straight,
                                             i_straight, lab.window_s),
                                 lab);
  be.onset_index_turn = i_turn;
  be.onset_index_straight = i_straight;
  be.straight_crossed_first = t_pass_straight <= t_pass_turn;
  be.onset_t = onset_t;
  return be;
}

std::map<std::string, AccelAverages> average_accelerations(
    std::span<const BuiltEncounter> encounters) {
  struct Sums {
    double first = 0.0, later = 0.0;
    int n_first = 0, n_later = 0;
  };
  std::map<std::string, Sums> sums;
  for (const BuiltEncounter& be : encounters) {
    Sums& t = sums[kTurnMovement];
    Sums& s = sums[kStraightMovement];
    if (be.straight_crossed_first) {
      s.first += be.obs.enc.straight.a;
      ++s.n_first;
      t.later += be.obs.enc.turn.a;
      ++t.n_later;
    } else {
      t.first += be.obs.enc.turn.a;
      ++t.n_first;
      s.later += be.obs.enc.straight.a;
      ++s.n_later;
    }
  }
  std::map<std::string, AccelAverages> out;
  for (const auto& [movement, acc] : sums) {
    AccelAverages a;
    a.n_first = acc.n_first;
    a.n_later = acc.n_later;
    if (acc.n_first > 0) a.first_mean = acc.first / acc.n_first;
    if (acc.n_later > 0) a.later_mean = acc.later / acc.n_later;
    out.emplace(movement, a);
  }
  return out;
}

BeliefModel beliefs_from_data(std::span<const BuiltEncounter> encounters,
                              const BeliefModel& fallback) {
  BeliefModel out = fallback;
  const auto avgs = average_accelerations(encounters);
  const auto it = avgs.find(kStraightMovement);
  if (it == avgs.end()) return out;
  if (it->second.n_first > 0) out.accel_when_rush = it->second.first_mean;
  if (it->second.n_later > 0) out.accel_when_yield = it->second.later_mean;
  return out;
}

}  // namespace ehmi
