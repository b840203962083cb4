#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ehmi/calibration.hpp"
#include "ehmi/game.hpp"
#include "ehmi/payoff.hpp"
#include "ehmi/types.hpp"

namespace ehmi {

// EHMI message the straight-going AV can display.
enum class Signal : std::uint8_t { Rush = 0, Yield = 1 };

const char* to_string(Signal s);

// Acceleration the human driver attributes to the AV per displayed signal.
// Defaults are fallback constants; when labeled data is available they are
// recomputed as the straight-movement pass-first / pass-later means.
struct BeliefModel {
  double accel_when_rush = 0.0;
  double accel_when_yield = -1.5;  // must stay below accel_when_rush
};

// Signal consistent with the AV-side strategy of an outcome.
constexpr Signal truthful_signal(Outcome expected) {
  return b_side(expected) == BStrategy::Yield ? Signal::Yield : Signal::Rush;
}

// Outcome with the highest total (A+B) payoff; ties break in outcome order.
Outcome expected_strategy(const UtilityMatrix& u);
std::optional<Outcome> expected_strategy(const Encounter& e, const PayoffParams& p);

// Most probable outcome with the straight vehicle leading (the no-EHMI
// reference prediction).
Outcome baseline_outcome(const UtilityMatrix& u);
std::optional<Outcome> baseline_outcome(const Encounter& e, const PayoffParams& p);

// The human driver's strategy once it attributes believed_av_accel to the
// AV: it re-derives the AV's zone-clear time under that acceleration and
// compares its two bound-carrying utilities (turn vs yield against a
// vehicle that keeps approaching). A believed AV that stops short of the
// zone frees the turn; one that stalls at or inside the zone forces a
// yield.
AStrategy hv_best_response(const Encounter& e, const PayoffParams& p,
                           double believed_av_accel);

// True iff the signal opposite to the AV's behavior in `expected` induces
// the human side of `expected`. Precondition: expected is o12 or o21.
bool deception_success(const Encounter& e, const PayoffParams& p, Outcome expected,
                       const BeliefModel& beliefs);

struct DisclosurePlan {
  Outcome expected = Outcome::O11;
  Outcome baseline = Outcome::O11;
  bool disclose = false;
  bool leader = true;  // disclosing AV always moves first in the signaled game
  std::optional<Signal> signal;
  bool truthful = true;
  bool deception_success = false;
  Outcome predicted = Outcome::O11;  // outcome implied by the chosen signal
};

// Three-stage pipeline: disclose iff the total-payoff optimum differs from
// the baseline prediction; disclose as leader; pick the truthful signal
// first and fall back to the deceptive one only when the truthful response
// misses the expected outcome. When neither signal works the plan keeps the
// truthful signal with deception_success = false.
std::optional<DisclosurePlan> decide(const Encounter& e, const PayoffParams& p,
                                     double delta, const BeliefModel& beliefs);

struct CensusRow {
  std::string id;
  DisclosurePlan plan;
  double baseline_total = 0.0;
  double ehmi_total = 0.0;
  double delta_turn = 0.0;      // player A utility change
  double delta_straight = 0.0;  // player B utility change
};

struct GainCensus {
  std::vector<CensusRow> improved;  // disclosure planned and effective
  int total = 0;
  int skipped = 0;  // undefined kinematics
  int deceptions_turn_yields = 0;  // successes with expected o21
  int deceptions_av_yields = 0;    // successes with expected o12
  double mean_baseline_total = 0.0;
  double mean_ehmi_total = 0.0;
  int count_a_up_b_down = 0;
  int count_a_down_b_up = 0;
  int count_both_up = 0;
};

GainCensus ehmi_gain_census(std::span<const Observation> data, const PayoffParams& p,
                            double delta, const BeliefModel& beliefs);

}  // namespace ehmi
