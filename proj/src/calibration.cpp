#include "ehmi/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "ehmi/nelder_mead.hpp"

#include <json.hpp>

namespace ehmi {

Outcome label_intention(double mean_accel_turn, double mean_accel_straight,
                        const LabelingOptions& opt) {
  const AStrategy a =
      mean_accel_turn < opt.yield_decel ? AStrategy::Yield : AStrategy::Turn;
  const BStrategy b =
      mean_accel_straight < opt.yield_decel ? BStrategy::Yield : BStrategy::Proceed;
  return joint_outcome(a, b);
}

namespace {

// Kinematic quantities reused across likelihood evaluations; they do not
// depend on the payoff coefficients.
struct PreparedObs {
  double accel_a = 0.0;
  double accel_b = 0.0;
  double bound_a = 0.0;
  double bound_b = 0.0;
  Outcome label = Outcome::O11;
};

std::vector<PreparedObs> prepare(std::span<const Observation> data, int* dropped) {
  std::vector<PreparedObs> out;
  out.reserve(data.size());
  int skipped = 0;
  for (const Observation& obs : data) {
    const auto ba = collision_avoid_accel(obs.enc.turn, obs.enc.straight);
    const auto bb = collision_avoid_accel(obs.enc.straight, obs.enc.turn);
    if (!ba || !bb) {
      ++skipped;
      continue;
    }
    out.push_back({obs.enc.turn.a, obs.enc.straight.a, *ba, *bb, obs.label});
  }
  if (dropped) *dropped = skipped;
  return out;
}

UtilityMatrix utilities_of(const PreparedObs& ob, const PayoffParams& p) {
  UtilityMatrix u;
  for (Outcome o : kOutcomes) {
    const auto ba = PayoffParams::a_has_bound_term(o) ? std::optional<double>(ob.bound_a)
                                                      : std::optional<double>{};
    const auto bb = PayoffParams::b_has_bound_term(o) ? std::optional<double>(ob.bound_b)
                                                      : std::optional<double>{};
    u.a[index(o)] = payoff_a(p, o, ob.accel_a, ba);
    u.b[index(o)] = payoff_b(p, o, ob.accel_b, bb);
  }
  return u;
}

double prepared_log_likelihood(std::span<const PreparedObs> data, const PayoffParams& p,
                               GameForm form, double delta, double prob_floor) {
  double ll = 0.0;
  for (const PreparedObs& ob : data) {
    const auto dist = outcome_distribution(utilities_of(ob, p), form, delta);
    ll += std::log(std::max(dist[ob.label], prob_floor));
  }
  return ll;
}

}  // namespace

double log_likelihood(std::span<const Observation> data, const PayoffParams& p,
                      GameForm form, double delta, double prob_floor, int* dropped) {
  const auto prep = prepare(data, dropped);
  return prepared_log_likelihood(prep, p, form, delta, prob_floor);
}

FitResult fit_mle(std::span<const Observation> data, GameForm form, double delta,
                  const PayoffParams& init, const FitOptions& opt) {
  int dropped = 0;
  const auto prep = prepare(data, &dropped);

  std::set<Outcome> distinct;
  for (const auto& ob : prep) distinct.insert(ob.label);
  if (distinct.size() < 2)
    throw DegenerateData("calibration needs at least two distinct outcome labels");

  const auto objective = [&](const std::vector<double>& x) {
    std::array<double, kParamCount> arr{};
    std::copy(x.begin(), x.end(), arr.begin());
    const PayoffParams p = unpack(arr);
    return -prepared_log_likelihood(prep, p, form, delta, opt.prob_floor);
  };

  const auto packed = pack(init);
  std::vector<double> best_x(packed.begin(), packed.end());
  SimplexOptions sopt;
  sopt.initial_step = opt.initial_step;
  sopt.tol = opt.tol;
  sopt.max_iter = opt.max_iter;
  SimplexResult best = minimize_simplex(objective, best_x, sopt);
  int total_iter = best.iterations;

  // Restarts re-seed the simplex around the incumbent; accepted only on
  // strict improvement, so the fit is monotone in the restart index.
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> jitter(0.0, 1.0);
  for (int r = 0; r < opt.restarts; ++r) {
    std::vector<double> x0 = best.x;
    for (double& xi : x0) xi += opt.restart_radius * jitter(rng);
    const SimplexResult cand = minimize_simplex(objective, x0, sopt);
    total_iter += cand.iterations;
    if (cand.value < best.value) best = cand;
  }
  // One polishing pass from the incumbent with a smaller simplex.
  SimplexOptions fine = sopt;
  fine.initial_step = 0.1 * opt.initial_step;
  const SimplexResult last = minimize_simplex(objective, best.x, fine);
  total_iter += last.iterations;
  if (last.value < best.value) best = last;

  FitResult res;
  std::array<double, kParamCount> arr{};
  std::copy(best.x.begin(), best.x.end(), arr.begin());
  res.params = unpack(arr);
  res.log_likelihood = -best.value;
  res.iterations = total_iter;
  res.dropped = dropped;
  return res;
}

PredictionStats evaluate_predictions(std::span<const Observation> data,
                                     const PayoffParams& p, GameForm form, double delta) {
  PredictionStats st;
  double prob_sum = 0.0;
  for (const Observation& obs : data) {
    const auto dist = outcome_distribution(obs.enc, p, form, delta);
    if (!dist) {
      ++st.dropped;
      continue;
    }
    const Outcome predicted = dist->argmax();
    ++st.n;
    if (predicted == obs.label) ++st.correct;
    prob_sum += (*dist)[predicted];
  }
  if (st.n > 0) {
    st.accuracy = static_cast<double>(st.correct) / static_cast<double>(st.n);
    st.error_rate = 1.0 - st.accuracy;
    st.rmse = std::sqrt(st.error_rate);
    st.mean_winning_prob = prob_sum / static_cast<double>(st.n);
  }
  return st;
}

double estimate_delta(std::span<const Outcome> labels, double fallback) {
  int n11 = 0, n22 = 0;
  for (Outcome o : labels) {
    if (o == Outcome::O11) ++n11;
    if (o == Outcome::O22) ++n22;
  }
  if (n11 + n22 == 0) return fallback;
  return static_cast<double>(n11) / static_cast<double>(n11 + n22);
}

std::string calibration_result_to_json(const CalibrationResult& r) {
  nlohmann::ordered_json j;
  j["fitted_form"] = to_string(r.fitted_form);
  j["delta"] = r.delta;
  j["log_likelihood"] = r.log_likelihood;
  j["n_observations"] = r.n_observations;
  j["dropped"] = r.dropped;
  nlohmann::ordered_json stats;
  for (const auto& [form, st] : r.stats_per_form) {
    stats[form] = {{"n", st.n},
                   {"correct", st.correct},
                   {"dropped", st.dropped},
                   {"accuracy", st.accuracy},
                   {"rmse", st.rmse},
                   {"mean_winning_prob", st.mean_winning_prob}};
  }
  j["stats"] = stats;
  nlohmann::ordered_json params;
  const auto packed = pack(r.params);
  for (double x : packed) params.push_back(x);
  j["params"] = params;
  return j.dump(2) + "\n";
}

}  // namespace ehmi
