#include "ehmi/disclosure.hpp"

#include <cmath>
#include <stdexcept>

namespace ehmi {

const char* to_string(Signal s) { return s == Signal::Rush ? "rush" : "yield"; }

Outcome expected_strategy(const UtilityMatrix& u) {
  Outcome best = Outcome::O11;
  for (Outcome o : kOutcomes)
    if (u.total(o) > u.total(best)) best = o;
  return best;
}

std::optional<Outcome> expected_strategy(const Encounter& e, const PayoffParams& p) {
  const auto u = utility_matrix(e, p);
  if (!u) return std::nullopt;
  return expected_strategy(*u);
}

Outcome baseline_outcome(const UtilityMatrix& u) {
  return stackelberg_distribution(u, GameForm::SequentialBFirst).argmax();
}

std::optional<Outcome> baseline_outcome(const Encounter& e, const PayoffParams& p) {
  const auto u = utility_matrix(e, p);
  if (!u) return std::nullopt;
  return baseline_outcome(*u);
}

AStrategy hv_best_response(const Encounter& e, const PayoffParams& p,
                           double believed_av_accel) {
  VehicleState believed = e.straight;
  believed.a = believed_av_accel;
  const auto t1 = time_to_clear(believed);
  if (!t1) {
    // The believed AV stops before clearing. Short of the zone entry it
    // never blocks the turn; at or past the entry it occupies the zone.
    const double stop =
        believed_av_accel < 0.0 ? stop_distance(believed.v, believed_av_accel) : 0.0;
    return stop < believed.d ? AStrategy::Turn : AStrategy::Yield;
  }
  const auto bound = collision_avoid_accel(e.turn, believed);
  const double u_turn = payoff_a(p, Outcome::O11, e.turn.a, bound);
  const double u_yield = payoff_a(p, Outcome::O21, e.turn.a, bound);
  return u_turn >= u_yield ? AStrategy::Turn : AStrategy::Yield;
}

namespace {

Signal opposite(Signal s) { return s == Signal::Rush ? Signal::Yield : Signal::Rush; }

double believed_accel(const BeliefModel& b, Signal s) {
  return s == Signal::Rush ? b.accel_when_rush : b.accel_when_yield;
}

}  // namespace

bool deception_success(const Encounter& e, const PayoffParams& p, Outcome expected,
                       const BeliefModel& beliefs) {
  if (expected != Outcome::O12 && expected != Outcome::O21)
    throw std::invalid_argument("deception is defined for expected o12 or o21 only");
  const Signal deceptive = opposite(truthful_signal(expected));
  const AStrategy resp = hv_best_response(e, p, believed_accel(beliefs, deceptive));
  return resp == a_side(expected);
}

std::optional<DisclosurePlan> decide(const Encounter& e, const PayoffParams& p,
                                     double /*delta*/, const BeliefModel& beliefs) {
  const auto u = utility_matrix(e, p);
  if (!u) return std::nullopt;

  DisclosurePlan plan;
  plan.expected = expected_strategy(*u);
  plan.baseline = baseline_outcome(*u);
  plan.disclose = plan.expected != plan.baseline;
  plan.leader = true;
  if (!plan.disclose) {
    plan.truthful = true;
    plan.deception_success = false;
    plan.predicted = plan.baseline;
    return plan;
  }

  const Signal truthful = truthful_signal(plan.expected);
  const AStrategy want = a_side(plan.expected);
  const AStrategy resp_truthful = hv_best_response(e, p, believed_accel(beliefs, truthful));
  if (resp_truthful == want) {
    plan.signal = truthful;
    plan.truthful = true;
    plan.deception_success = false;
    plan.predicted = plan.expected;
    return plan;
  }

  const Signal deceptive = opposite(truthful);
  const AStrategy resp_deceptive =
      hv_best_response(e, p, believed_accel(beliefs, deceptive));
  if (resp_deceptive == want) {
    plan.signal = deceptive;
    plan.truthful = false;
    plan.deception_success = true;
    plan.predicted = plan.expected;
    return plan;
  }

  // No effective signal: keep the truthful one and record the miss.
  plan.signal = truthful;
  plan.truthful = true;
  plan.deception_success = false;
  plan.predicted = joint_outcome(resp_truthful, b_side(plan.expected));
  return plan;
}

GainCensus ehmi_gain_census(std::span<const Observation> data, const PayoffParams& p,
                            double delta, const BeliefModel& beliefs) {
  GainCensus census;
  census.total = static_cast<int>(data.size());
  double base_sum = 0.0, ehmi_sum = 0.0;
  for (const Observation& obs : data) {
    const auto u = utility_matrix(obs.enc, p);
    const auto plan = decide(obs.enc, p, delta, beliefs);
    if (!u || !plan) {
      ++census.skipped;
      continue;
    }
    if (!plan->disclose || plan->predicted != plan->expected) continue;

    CensusRow row;
    row.id = obs.enc.id;
    row.plan = *plan;
    row.baseline_total = u->total(plan->baseline);
    row.ehmi_total = u->total(plan->expected);
    row.delta_turn = u->a[index(plan->expected)] - u->a[index(plan->baseline)];
    row.delta_straight = u->b[index(plan->expected)] - u->b[index(plan->baseline)];
    base_sum += row.baseline_total;
    ehmi_sum += row.ehmi_total;
    if (row.delta_turn > 0.0 && row.delta_straight < 0.0) ++census.count_a_up_b_down;
    if (row.delta_turn < 0.0 && row.delta_straight > 0.0) ++census.count_a_down_b_up;
    if (row.delta_turn > 0.0 && row.delta_straight > 0.0) ++census.count_both_up;
    if (plan->deception_success) {
      if (plan->expected == Outcome::O21) ++census.deceptions_turn_yields;
      if (plan->expected == Outcome::O12) ++census.deceptions_av_yields;
    }
    census.improved.push_back(std::move(row));
  }
  if (!census.improved.empty()) {
    const double n = static_cast<double>(census.improved.size());
    census.mean_baseline_total = base_sum / n;
    census.mean_ehmi_total = ehmi_sum / n;
  }
  return census;
}

}  // namespace ehmi
