#include "ehmi/cli.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ehmi/calibration.hpp"
#include "ehmi/config.hpp"
#include "ehmi/data_io.hpp"
#include "ehmi/disclosure.hpp"
#include "ehmi/game.hpp"
#include "ehmi/payoff.hpp"
#include "ehmi/simulation.hpp"

namespace ehmi {
namespace {

using nlohmann::ordered_json;

constexpr std::array<GameForm, 3> kForms = {
    GameForm::Simultaneous, GameForm::SequentialAFirst, GameForm::SequentialBFirst};

constexpr double kDangerPet = 3.0;  // PET below this counts as dangerous

// fixed 3-decimal rendering keeps reports byte-deterministic
std::string fmt3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string pct3(double fraction) { return fmt3(100.0 * fraction) + "%"; }

GameForm form_from_flag(const std::string& s) {
  if (s == "sim") return GameForm::Simultaneous;
  if (s == "a-first") return GameForm::SequentialAFirst;
  return GameForm::SequentialBFirst;
}

double to_double(const std::string& tok, const std::string& what) {
  double v{};
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  const auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || p != last)
    throw std::runtime_error("invalid number for " + what + ": '" + tok + "'");
  return v;
}

BeliefModel parse_beliefs(const std::string& s, BeliefModel base) {
  const auto comma = s.find(',');
  if (comma == std::string::npos)
    throw std::runtime_error("--beliefs expects 'accel_rush,accel_yield'");
  base.accel_when_rush = to_double(s.substr(0, comma), "--beliefs");
  base.accel_when_yield = to_double(s.substr(comma + 1), "--beliefs");
  return base;
}

Defaults resolve_defaults(const std::string& config_path) {
  if (!config_path.empty()) return load_defaults(config_path);
  const char* fallback = "config/defaults.json";
  if (std::filesystem::exists(fallback)) return load_defaults(fallback);
  return Defaults{};
}

PayoffParams resolve_params(const std::string& flag, const Defaults& defs,
                            bool required) {
  if (!flag.empty()) return load_params(flag);
  if (!defs.params_file.empty()) return load_params(defs.params_file);
  if (required)
    throw std::runtime_error(
        "no parameter file: pass --params or set params_file in the config");
  return PayoffParams{};
}

constexpr const char* kEncounterHeader =
    "id,v_turn,a_turn,d_turn,D_turn,v_straight,a_straight,d_straight,D_straight";

struct LoadedData {
  std::vector<Observation> obs;
  bool labeled = false;
  BeliefModel data_beliefs;
  bool beliefs_available = false;
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool is_turn_movement(const std::string& m) {
  const std::string n = lower(m);
  return n == "left-turn" || n == "left_turn" || n == "turn" || n == "left";
}

bool is_straight_movement(const std::string& m) {
  const std::string n = lower(m);
  return n == "straight" || n == "through";
}

// Accepts either the per-encounter state CSV (header above, optional
// trailing label column) or a raw trajectory CSV, which is paired
// exhaustively across movements and reduced to interaction onsets.
LoadedData load_observations(const std::string& path, const Defaults& defs) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  std::string header = text.substr(0, std::min(text.find('\n'), text.size()));
  if (!header.empty() && header.back() == '\r') header.pop_back();

  LoadedData out;
  const std::string labeled_header = std::string(kEncounterHeader) + ",label";
  if (header == kEncounterHeader || header == labeled_header) {
    out.labeled = header == labeled_header;
    std::istringstream ss(text);
    std::string line;
    std::getline(ss, line);
    int line_no = 1;
    while (std::getline(ss, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      std::vector<std::string> f;
      std::stringstream ls(line);
      std::string tok;
      while (std::getline(ls, tok, ',')) f.push_back(tok);
      const std::size_t want = out.labeled ? 10u : 9u;
      if (f.size() != want)
        throw MalformedRow("expected " + std::to_string(want) + " fields, got " +
                               std::to_string(f.size()),
                           line_no);
      Observation o;
      o.enc.id = f[0];
      o.enc.turn = {to_double(f[1], "v_turn"), to_double(f[2], "a_turn"),
                    to_double(f[3], "d_turn"), to_double(f[4], "D_turn")};
      o.enc.straight = {to_double(f[5], "v_straight"), to_double(f[6], "a_straight"),
                        to_double(f[7], "d_straight"), to_double(f[8], "D_straight")};
      try {
        validate(o.enc.turn);
        validate(o.enc.straight);
      } catch (const std::invalid_argument& e) {
        throw MalformedRow(e.what(), line_no);
      }
      if (out.labeled) o.label = outcome_from_string(f[9]);
      out.obs.push_back(std::move(o));
    }
    return out;
  }

  std::istringstream ss(text);
  const auto trajs = parse_trajectories(ss);
  std::vector<const Trajectory*> turns, straights;
  for (const Trajectory& t : trajs) {
    if (is_turn_movement(t.movement))
      turns.push_back(&t);
    else if (is_straight_movement(t.movement))
      straights.push_back(&t);
    else
      throw SchemaMismatch("unknown movement '" + t.movement + "' for vehicle '" +
                           t.vehicle_id + "'");
  }
  std::vector<BuiltEncounter> built;
  for (const Trajectory* t : turns)
    for (const Trajectory* s : straights)
      if (auto be = build_encounter(*t, *s, defs.geometry, defs.labeling))
        built.push_back(std::move(*be));
  out.obs.reserve(built.size());
  for (const BuiltEncounter& be : built) out.obs.push_back(be.obs);
  out.labeled = true;
  out.data_beliefs = beliefs_from_data(built, defs.beliefs);
  out.beliefs_available = true;
  return out;
}

double resolve_delta(const std::optional<double>& flag, const LoadedData& data,
                     const Defaults& defs) {
  if (flag) return *flag;
  if (data.labeled && !data.obs.empty()) {
    std::vector<Outcome> labels;
    labels.reserve(data.obs.size());
    for (const Observation& o : data.obs) labels.push_back(o.label);
    return estimate_delta(labels, defs.delta_fallback);
  }
  return defs.delta_fallback;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (!path.parent_path().empty()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
}

void print_form_stats(std::ostream& os, GameForm form, const PredictionStats& st) {
  os << "  " << std::left << std::setw(20) << to_string(form) << " rmse=" << fmt3(st.rmse)
     << " accuracy=" << fmt3(st.accuracy) << " error_rate=" << fmt3(st.error_rate)
     << " dropped=" << st.dropped << "\n";
}

ordered_json stats_json(const PredictionStats& st) {
  return ordered_json{{"n", st.n},
                      {"correct", st.correct},
                      {"dropped", st.dropped},
                      {"accuracy", st.accuracy},
                      {"error_rate", st.error_rate},
                      {"rmse", st.rmse},
                      {"mean_winning_prob", st.mean_winning_prob}};
}

// ---------------------------------------------------------------- calibrate

struct CalibrateArgs {
  std::string data, params, out, config;
  std::optional<double> delta;
  std::uint64_t seed = 0;
  int restarts = 10;
  int max_iter = 20000;
};

int cmd_calibrate(const CalibrateArgs& a) {
  const Defaults defs = resolve_defaults(a.config);
  const LoadedData data = load_observations(a.data, defs);
  if (!data.labeled)
    throw std::runtime_error("calibration requires labeled encounters");
  if (data.obs.empty()) throw std::runtime_error("no usable encounters in " + a.data);
  const double delta = resolve_delta(a.delta, data, defs);
  const PayoffParams init = resolve_params(a.params, defs, false);

  FitOptions fopt;
  fopt.seed = a.seed;
  fopt.restarts = a.restarts;
  fopt.max_iter = a.max_iter;

  CalibrationResult result;
  result.delta = delta;
  result.n_observations = static_cast<int>(data.obs.size());

  std::cout << "calibrate: n=" << data.obs.size() << " delta=" << fmt3(delta) << "\n";
  bool first = true;
  double best_rmse = 0.0;
  for (GameForm form : kForms) {
    const FitResult fit = fit_mle(data.obs, form, delta, init, fopt);
    const PredictionStats st = evaluate_predictions(data.obs, fit.params, form, delta);
    result.stats_per_form.emplace(to_string(form), st);
    print_form_stats(std::cout, form, st);
    if (first || st.rmse < best_rmse) {
      first = false;
      best_rmse = st.rmse;
      result.fitted_form = form;
      result.params = fit.params;
      result.log_likelihood = fit.log_likelihood;
      result.dropped = fit.dropped;
    }
  }
  std::cout << "fitted form: " << to_string(result.fitted_form) << "\n";

  const std::filesystem::path json_path(a.out);
  std::filesystem::path params_path = json_path;
  params_path.replace_extension(".params");
  write_text_file(json_path, calibration_result_to_json(result));
  save_params(result.params, params_path.string());
  std::cout << "wrote " << json_path.string() << " and " << params_path.string() << "\n";
  return 0;
}

// ----------------------------------------------------------------- validate

struct ValidateArgs {
  std::string data, params, out, config, form;
  std::optional<double> delta;
};

int cmd_validate(const ValidateArgs& a) {
  const Defaults defs = resolve_defaults(a.config);
  const LoadedData data = load_observations(a.data, defs);
  if (!data.labeled) throw std::runtime_error("validation requires labeled encounters");
  if (data.obs.empty()) throw std::runtime_error("no usable encounters in " + a.data);
  const double delta = resolve_delta(a.delta, data, defs);
  const PayoffParams params = resolve_params(a.params, defs, true);

  std::vector<GameForm> forms(kForms.begin(), kForms.end());
  if (!a.form.empty()) forms = {form_from_flag(a.form)};

  std::cout << "validate: n=" << data.obs.size() << " delta=" << fmt3(delta) << "\n";
  ordered_json jstats;
  for (GameForm form : forms) {
    const PredictionStats st = evaluate_predictions(data.obs, params, form, delta);
    print_form_stats(std::cout, form, st);
    jstats[to_string(form)] = stats_json(st);
  }
  if (!a.out.empty()) {
    ordered_json j;
    j["delta"] = delta;
    j["n_observations"] = static_cast<int>(data.obs.size());
    j["stats"] = jstats;
    write_text_file(a.out, j.dump(2) + "\n");
    std::cout << "wrote " << a.out << "\n";
  }
  return 0;
}

// ------------------------------------------------------------------- decide

struct DecideArgs {
  std::string data, params, out, config, beliefs;
  std::optional<double> delta;
};

ordered_json census_json(const GainCensus& census, double delta,
                         const BeliefModel& beliefs) {
  ordered_json j;
  j["n"] = census.total;
  j["skipped"] = census.skipped;
  j["delta"] = delta;
  j["beliefs"] = {{"accel_when_rush", beliefs.accel_when_rush},
                  {"accel_when_yield", beliefs.accel_when_yield}};
  const int improved = static_cast<int>(census.improved.size());
  j["improved"] = {
      {"count", improved},
      {"fraction", census.total > 0
                       ? static_cast<double>(improved) / census.total
                       : 0.0},
      {"mean_baseline_total", census.mean_baseline_total},
      {"mean_ehmi_total", census.mean_ehmi_total},
      {"mean_improvement", census.mean_ehmi_total - census.mean_baseline_total}};
  j["categories"] = {{"turn_up_straight_down", census.count_a_up_b_down},
                     {"turn_down_straight_up", census.count_a_down_b_up},
                     {"both_up", census.count_both_up}};
  const int successes = census.deceptions_turn_yields + census.deceptions_av_yields;
  j["deceptions"] = {{"total", successes},
                     {"straight_first", census.deceptions_turn_yields},
                     {"straight_yields", census.deceptions_av_yields}};
  ordered_json rows = ordered_json::array();
  for (const CensusRow& r : census.improved) {
    ordered_json row;
    row["id"] = r.id;
    row["expected"] = to_string(r.plan.expected);
    row["baseline"] = to_string(r.plan.baseline);
    row["signal"] = r.plan.signal ? to_string(*r.plan.signal) : "";
    row["truthful"] = r.plan.truthful;
    row["deception_success"] = r.plan.deception_success;
    row["predicted"] = to_string(r.plan.predicted);
    row["baseline_total"] = r.baseline_total;
    row["ehmi_total"] = r.ehmi_total;
    row["delta_turn"] = r.delta_turn;
    row["delta_straight"] = r.delta_straight;
    rows.push_back(row);
  }
  j["rows"] = rows;
  return j;
}

void print_census(std::ostream& os, const GainCensus& census) {
  const int improved = static_cast<int>(census.improved.size());
  os << "improved by disclosure: " << improved;
  if (census.total > 0)
    os << " (" << pct3(static_cast<double>(improved) / census.total) << " of "
       << census.total << ")";
  os << "\n";
  os << "mean total payoff across improved: baseline=" << fmt3(census.mean_baseline_total)
     << " ehmi=" << fmt3(census.mean_ehmi_total)
     << " improvement=" << fmt3(census.mean_ehmi_total - census.mean_baseline_total)
     << "\n";
  os << "payoff change categories: turn-up/straight-down=" << census.count_a_up_b_down
     << " turn-down/straight-up=" << census.count_a_down_b_up
     << " both-up=" << census.count_both_up << "\n";
  const int successes = census.deceptions_turn_yields + census.deceptions_av_yields;
  os << "successful deceptions: " << successes
     << " (straight-first=" << census.deceptions_turn_yields
     << ", straight-yields=" << census.deceptions_av_yields << ")\n";
}

int cmd_decide(const DecideArgs& a) {
  const Defaults defs = resolve_defaults(a.config);
  const LoadedData data = load_observations(a.data, defs);
  if (data.obs.empty()) throw std::runtime_error("no usable encounters in " + a.data);
  const double delta = resolve_delta(a.delta, data, defs);
  const PayoffParams params = resolve_params(a.params, defs, true);
  BeliefModel beliefs = data.beliefs_available ? data.data_beliefs : defs.beliefs;
  if (!a.beliefs.empty()) beliefs = parse_beliefs(a.beliefs, beliefs);

  const GainCensus census = ehmi_gain_census(data.obs, params, delta, beliefs);

  std::ostringstream csv;
  csv << "id,status,expected,baseline,disclose,signal,truthful,deception_success,"
         "predicted\n";
  for (const Observation& o : data.obs) {
    const auto plan = decide(o.enc, params, delta, beliefs);
    if (!plan) {
      csv << o.enc.id << ",skipped,,,,,,,\n";
      continue;
    }
    csv << o.enc.id << ",ok," << to_string(plan->expected) << ','
        << to_string(plan->baseline) << ',' << (plan->disclose ? 1 : 0) << ','
        << (plan->signal ? to_string(*plan->signal) : "") << ','
        << (plan->truthful ? 1 : 0) << ',' << (plan->deception_success ? 1 : 0) << ','
        << to_string(plan->predicted) << "\n";
  }

  std::cout << "decide: n=" << census.total << " skipped=" << census.skipped
            << " delta=" << fmt3(delta) << "\n";
  print_census(std::cout, census);

  const std::filesystem::path csv_path(a.out);
  std::filesystem::path census_path = csv_path;
  census_path.replace_extension(".census.json");
  write_text_file(csv_path, csv.str());
  write_text_file(census_path, census_json(census, delta, beliefs).dump(2) + "\n");
  std::cout << "wrote " << csv_path.string() << " and " << census_path.string() << "\n";
  return 0;
}

// ----------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string scenario, out;
};

Trajectory trajectory_of(const TrackResult& tr, const char* id, const char* movement) {
  Trajectory t;
  t.vehicle_id = id;
  t.movement = movement;
  t.frames.reserve(tr.samples.size());
  for (const TrackSample& s : tr.samples) t.frames.push_back({s.t, s.x, s.y, s.v});
  return t;
}

ordered_json pet_json(const std::optional<PetResult>& pet) {
  if (!pet) return ordered_json{{"defined", false}};
  return ordered_json{{"defined", true},
                      {"pet", pet->pet},
                      {"t_first", pet->t_first},
                      {"t_second", pet->t_second},
                      {"straight_first", pet->straight_first},
                      {"dangerous", pet->pet < kDangerPet}};
}

void print_pet_line(std::ostream& os, const char* label,
                    const std::optional<PetResult>& pet) {
  os << "pet " << label << "=";
  if (!pet) {
    os << "none\n";
    return;
  }
  os << fmt3(pet->pet) << " s dangerous=" << (pet->pet < kDangerPet ? "yes" : "no")
     << " first=" << (pet->straight_first ? "straight" : "turn") << "\n";
}

int cmd_simulate(const SimulateArgs& a) {
  const ScenarioConfig sc = load_scenario(a.scenario);
  const SimResult plain = simulate_encounter(sc, false);
  const SimResult dec = simulate_encounter(sc, true);

  std::cout << "scenario " << (sc.name.empty() ? a.scenario : sc.name) << "\n";
  print_pet_line(std::cout, "plain", plain.pet);
  print_pet_line(std::cout, "deception", dec.pet);
  if (plain.pet && dec.pet) {
    const double shift = dec.pet->pet - plain.pet->pet;
    std::cout << "pet shift=" << (shift >= 0.0 ? "+" : "") << fmt3(shift) << " s\n";
  }
  if (plain.turn.diverged || plain.straight.diverged || dec.turn.diverged ||
      dec.straight.diverged)
    throw std::runtime_error("path tracking diverged; check the scenario geometry");

  if (!a.out.empty()) {
    const auto dump_run = [&](const SimResult& run, const char* tag) {
      const std::vector<Trajectory> trajs = {
          trajectory_of(run.turn, "turn", "left-turn"),
          trajectory_of(run.straight, "straight", "straight")};
      std::ostringstream os;
      write_trajectories(os, trajs);
      write_text_file(a.out + "." + tag + ".csv", os.str());
    };
    dump_run(plain, "plain");
    dump_run(dec, "deception");
    ordered_json j;
    j["scenario"] = sc.name;
    j["plain"] = pet_json(plain.pet);
    j["deception"] = pet_json(dec.pet);
    if (plain.pet && dec.pet)
      j["shift"] = dec.pet->pet - plain.pet->pet;
    else
      j["shift"] = nullptr;
    write_text_file(a.out + ".pet.json", j.dump(2) + "\n");
    std::cout << "wrote " << a.out << ".{plain,deception}.csv and " << a.out
              << ".pet.json\n";
  }
  return 0;
}

// -------------------------------------------------------------------- sweep

struct SweepArgs {
  std::string grid, params, out, config, beliefs;
  std::optional<double> delta;
};

struct PetAggregate {
  double plain_sum = 0.0;
  double dec_sum = 0.0;
  int n = 0;
  void add(double plain, double dec) {
    plain_sum += plain;
    dec_sum += dec;
    ++n;
  }
  double mean_plain() const { return n > 0 ? plain_sum / n : 0.0; }
  double mean_dec() const { return n > 0 ? dec_sum / n : 0.0; }
};

struct SweepSummary {
  PetAggregate all;
  PetAggregate danger_straight_first;
  PetAggregate danger_straight_yields;
};

SweepSummary summarize_sweep(const SweepResult& res) {
  SweepSummary s;
  for (const SweepCell& c : res.cells) {
    if (c.skipped || !c.plan || !c.plan->deception_success) continue;
    if (!c.pet_plain || !c.pet_deception) continue;
    s.all.add(*c.pet_plain, *c.pet_deception);
    if (*c.pet_plain < kDangerPet) {
      if (c.plan->expected == Outcome::O21)
        s.danger_straight_first.add(*c.pet_plain, *c.pet_deception);
      else if (c.plan->expected == Outcome::O12)
        s.danger_straight_yields.add(*c.pet_plain, *c.pet_deception);
    }
  }
  return s;
}

void print_sweep(std::ostream& os, const SweepResult& res, const SweepSummary& s) {
  const int successes = res.success_straight_first + res.success_straight_yields;
  os << "sweep: cells=" << res.total << " skipped=" << res.skipped << "\n";
  os << "successful deceptions: " << successes << " (" << pct3(res.success_fraction())
     << ") straight-first=" << res.success_straight_first << " ("
     << pct3(res.fraction_straight_first()) << ") straight-yields="
     << res.success_straight_yields << " (" << pct3(res.fraction_straight_yields())
     << ")\n";
  if (s.all.n > 0)
    os << "paired pet over successes (n=" << s.all.n
       << "): plain=" << fmt3(s.all.mean_plain()) << " deception="
       << fmt3(s.all.mean_dec()) << " shift="
       << (s.all.mean_dec() >= s.all.mean_plain() ? "+" : "")
       << fmt3(s.all.mean_dec() - s.all.mean_plain()) << "\n";
  os << "dangerous subset (plain pet < " << fmt3(kDangerPet) << " s):\n";
  const auto danger_line = [&](const char* label, const PetAggregate& agg) {
    os << "  " << label << " (n=" << agg.n << ")";
    if (agg.n > 0)
      os << ": " << fmt3(agg.mean_plain()) << " -> " << fmt3(agg.mean_dec());
    os << "\n";
  };
  danger_line("straight-first", s.danger_straight_first);
  danger_line("straight-yields", s.danger_straight_yields);
}

ordered_json sweep_json(const SweepResult& res, const SweepSummary& s, double delta,
                        const BeliefModel& beliefs) {
  const auto agg_json = [](const PetAggregate& a) {
    return ordered_json{{"n", a.n},
                        {"mean_pet_plain", a.mean_plain()},
                        {"mean_pet_deception", a.mean_dec()}};
  };
  ordered_json j;
  j["cells"] = res.total;
  j["skipped"] = res.skipped;
  j["delta"] = delta;
  j["beliefs"] = {{"accel_when_rush", beliefs.accel_when_rush},
                  {"accel_when_yield", beliefs.accel_when_yield}};
  j["successes"] = {
      {"total", res.success_straight_first + res.success_straight_yields},
      {"fraction", res.success_fraction()},
      {"straight_first", res.success_straight_first},
      {"fraction_straight_first", res.fraction_straight_first()},
      {"straight_yields", res.success_straight_yields},
      {"fraction_straight_yields", res.fraction_straight_yields()}};
  j["paired_pet"] = agg_json(s.all);
  j["dangerous_subset"] = {{"straight_first", agg_json(s.danger_straight_first)},
                           {"straight_yields", agg_json(s.danger_straight_yields)}};
  return j;
}

std::string sweep_cells_csv(const SweepResult& res) {
  std::ostringstream os;
  os << "v_turn,a_turn,v_straight,a_straight,status,expected,disclose,signal,"
        "deception_success,pet_plain,pet_deception\n";
  for (const SweepCell& c : res.cells) {
    os << fmt3(c.v_turn) << ',' << fmt3(c.a_turn) << ',' << fmt3(c.v_straight) << ','
       << fmt3(c.a_straight) << ',';
    if (c.skipped || !c.plan) {
      os << "skipped,,,,,,\n";
      continue;
    }
    const DisclosurePlan& p = *c.plan;
    os << "ok," << to_string(p.expected) << ',' << (p.disclose ? 1 : 0) << ','
       << (p.signal ? to_string(*p.signal) : "") << ',' << (p.deception_success ? 1 : 0)
       << ',' << (c.pet_plain ? fmt3(*c.pet_plain) : "") << ','
       << (c.pet_deception ? fmt3(*c.pet_deception) : "") << "\n";
  }
  return os.str();
}

int cmd_sweep(const SweepArgs& a) {
  const Defaults defs = resolve_defaults(a.config);
  const SweepConfig cfg = load_sweep_config(a.grid);
  const PayoffParams params = resolve_params(a.params, defs, true);
  const double delta = a.delta ? *a.delta : defs.delta_fallback;
  BeliefModel beliefs = defs.beliefs;
  if (!a.beliefs.empty()) beliefs = parse_beliefs(a.beliefs, beliefs);

  const SweepResult res = sweep_initial_states(cfg.map, cfg.spec, params, delta, beliefs);
  const SweepSummary summary = summarize_sweep(res);
  print_sweep(std::cout, res, summary);

  if (!a.out.empty()) {
    write_text_file(a.out, sweep_json(res, summary, delta, beliefs).dump(2) + "\n");
    std::filesystem::path cells_path(a.out);
    cells_path.replace_extension(".cells.csv");
    write_text_file(cells_path, sweep_cells_csv(res));
    std::cout << "wrote " << a.out << " and " << cells_path.string() << "\n";
  }
  return 0;
}

// ------------------------------------------------------------------- report

struct ReportArgs {
  std::string data, params, grid, out, config, beliefs;
  std::vector<std::string> scenarios;
  std::optional<double> delta;
};

int cmd_report(const ReportArgs& a) {
  const Defaults defs = resolve_defaults(a.config);
  const PayoffParams params = resolve_params(a.params, defs, true);

  ordered_json report;
  report["version"] = defs.version;

  double delta = a.delta ? *a.delta : defs.delta_fallback;
  BeliefModel beliefs = defs.beliefs;

  if (!a.data.empty()) {
    const LoadedData data = load_observations(a.data, defs);
    delta = resolve_delta(a.delta, data, defs);
    if (data.beliefs_available) beliefs = data.data_beliefs;
    if (!a.beliefs.empty()) beliefs = parse_beliefs(a.beliefs, beliefs);

    if (data.labeled && !data.obs.empty()) {
      std::cout << "validate: n=" << data.obs.size() << " delta=" << fmt3(delta)
                << "\n";
      ordered_json jstats;
      for (GameForm form : kForms) {
        const PredictionStats st = evaluate_predictions(data.obs, params, form, delta);
        print_form_stats(std::cout, form, st);
        jstats[to_string(form)] = stats_json(st);
      }
      report["validation"] = jstats;
    }
    const GainCensus census = ehmi_gain_census(data.obs, params, delta, beliefs);
    std::cout << "decide: n=" << census.total << " skipped=" << census.skipped << "\n";
    print_census(std::cout, census);
    report["census"] = census_json(census, delta, beliefs);
  } else if (!a.beliefs.empty()) {
    beliefs = parse_beliefs(a.beliefs, beliefs);
  }

  if (!a.scenarios.empty()) {
    ordered_json jscenarios = ordered_json::array();
    for (const std::string& path : a.scenarios) {
      const ScenarioConfig sc = load_scenario(path);
      const SimResult plain = simulate_encounter(sc, false);
      const SimResult dec = simulate_encounter(sc, true);
      std::cout << "scenario " << (sc.name.empty() ? path : sc.name) << "\n";
      print_pet_line(std::cout, "plain", plain.pet);
      print_pet_line(std::cout, "deception", dec.pet);
      ordered_json j;
      j["scenario"] = sc.name;
      j["plain"] = pet_json(plain.pet);
      j["deception"] = pet_json(dec.pet);
      if (plain.pet && dec.pet)
        j["shift"] = dec.pet->pet - plain.pet->pet;
      else
        j["shift"] = nullptr;
      jscenarios.push_back(j);
    }
    report["scenarios"] = jscenarios;
  }

  if (!a.grid.empty()) {
    const SweepConfig cfg = load_sweep_config(a.grid);
    const SweepResult res =
        sweep_initial_states(cfg.map, cfg.spec, params, delta, beliefs);
    const SweepSummary summary = summarize_sweep(res);
    print_sweep(std::cout, res, summary);
    report["sweep"] = sweep_json(res, summary, delta, beliefs);
  }

  if (!a.out.empty()) {
    write_text_file(a.out, report.dump(2) + "\n");
    std::cout << "wrote " << a.out << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"game-theoretic EHMI disclosure toolkit"};
  app.require_subcommand(1);

  CalibrateArgs cal;
  double cal_delta = 0.0;
  auto* cal_cmd = app.add_subcommand(
      "calibrate", "fit the 20 payoff coefficients from labeled encounters");
  cal_cmd->add_option("--data", cal.data, "encounter or trajectory CSV")->required();
  cal_cmd->add_option("--params", cal.params, "initial parameter file");
  cal_cmd->add_option("--delta", cal_delta, "dual-equilibrium split override")
      ->check(CLI::Range(0.0, 1.0));
  cal_cmd->add_option("--seed", cal.seed, "restart RNG seed");
  cal_cmd->add_option("--restarts", cal.restarts, "simplex restarts");
  cal_cmd->add_option("--max-iter", cal.max_iter, "simplex iteration cap");
  cal_cmd->add_option("--config", cal.config, "defaults config file");
  cal_cmd->add_option("--out", cal.out, "result JSON path")->required();

  ValidateArgs val;
  double val_delta = 0.0;
  auto* val_cmd =
      app.add_subcommand("validate", "score predictions against labeled encounters");
  val_cmd->add_option("--data", val.data, "encounter or trajectory CSV")->required();
  val_cmd->add_option("--params", val.params, "parameter file");
  val_cmd->add_option("--form", val.form, "game form")
      ->check(CLI::IsMember({"sim", "a-first", "b-first"}));
  val_cmd->add_option("--delta", val_delta, "dual-equilibrium split override")
      ->check(CLI::Range(0.0, 1.0));
  val_cmd->add_option("--config", val.config, "defaults config file");
  val_cmd->add_option("--out", val.out, "stats JSON path");

  DecideArgs dec;
  double dec_delta = 0.0;
  auto* dec_cmd =
      app.add_subcommand("decide", "plan disclosure per encounter and run the census");
  dec_cmd->add_option("--data", dec.data, "encounter or trajectory CSV")->required();
  dec_cmd->add_option("--params", dec.params, "parameter file");
  dec_cmd->add_option("--delta", dec_delta, "dual-equilibrium split override")
      ->check(CLI::Range(0.0, 1.0));
  dec_cmd->add_option("--beliefs", dec.beliefs, "rush,yield believed accelerations");
  dec_cmd->add_option("--config", dec.config, "defaults config file");
  dec_cmd->add_option("--out", dec.out, "plan CSV path")->required();

  SimulateArgs sim;
  auto* sim_cmd =
      app.add_subcommand("simulate", "run a scenario with and without deception");
  sim_cmd->add_option("--scenario", sim.scenario, "scenario JSON")->required();
  sim_cmd->add_option("--out", sim.out, "output base path");

  SweepArgs swp;
  double swp_delta = 0.0;
  auto* swp_cmd =
      app.add_subcommand("sweep", "grid census of deception success and paired PET");
  swp_cmd->add_option("--grid", swp.grid, "sweep config JSON")->required();
  swp_cmd->add_option("--params", swp.params, "parameter file");
  swp_cmd->add_option("--delta", swp_delta, "dual-equilibrium split override")
      ->check(CLI::Range(0.0, 1.0));
  swp_cmd->add_option("--beliefs", swp.beliefs, "rush,yield believed accelerations");
  swp_cmd->add_option("--config", swp.config, "defaults config file");
  swp_cmd->add_option("--out", swp.out, "summary JSON path");

  ReportArgs rep;
  double rep_delta = 0.0;
  auto* rep_cmd = app.add_subcommand("report", "combined reproduction report");
  rep_cmd->add_option("--data", rep.data, "encounter or trajectory CSV");
  rep_cmd->add_option("--params", rep.params, "parameter file");
  rep_cmd->add_option("--grid", rep.grid, "sweep config JSON");
  rep_cmd->add_option("--scenario", rep.scenarios, "scenario JSON (repeatable)");
  rep_cmd->add_option("--delta", rep_delta, "dual-equilibrium split override")
      ->check(CLI::Range(0.0, 1.0));
  rep_cmd->add_option("--beliefs", rep.beliefs, "rush,yield believed accelerations");
  rep_cmd->add_option("--config", rep.config, "defaults config file");
  rep_cmd->add_option("--out", rep.out, "report JSON path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*cal_cmd) {
      if (cal_cmd->count("--delta") > 0) cal.delta = cal_delta;
      return cmd_calibrate(cal);
    }
    if (*val_cmd) {
      if (val_cmd->count("--delta") > 0) val.delta = val_delta;
      return cmd_validate(val);
    }
    if (*dec_cmd) {
      if (dec_cmd->count("--delta") > 0) dec.delta = dec_delta;
      return cmd_decide(dec);
    }
    if (*sim_cmd) return cmd_simulate(sim);
    if (*swp_cmd) {
      if (swp_cmd->count("--delta") > 0) swp.delta = swp_delta;
      return cmd_sweep(swp);
    }
    if (*rep_cmd) {
      if (rep_cmd->count("--delta") > 0) rep.delta = rep_delta;
      return cmd_report(rep);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace ehmi
