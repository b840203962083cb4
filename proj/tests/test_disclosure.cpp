#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "ehmi/disclosure.hpp"
#include "oracles.hpp"

using namespace ehmi;

namespace {

const PayoffParams kP = oracle::shipped_params();
const BeliefModel kBeliefs;  // rush -> 0.0, yield -> -1.5

// Hand-solved encounters covering every branch of the disclosure pipeline.
const Encounter kNoDisclose{"E1", {5.0, 0.0, 20.0, 29.5}, {10.0, 0.0, 30.0, 40.0}};
const Encounter kTruthful{"E2", {5.0, 1.5, 20.0, 29.5}, {8.0, 0.5, 34.677, 36.0}};
const Encounter kDeception{"E3", {5.0, 1.0, 20.0, 29.5}, {8.0, -0.5, 20.0, 29.5}};
const Encounter kUndefined{"E4", {5.0, 0.0, 20.0, 29.5}, {2.0, -1.0, 21.0, 31.0}};
const Encounter kNoSignal{"E5", {5.0, 1.0, 20.0, 29.5}, {7.0, 0.5, 20.0, 29.5}};

}  // namespace

TEST_CASE("truthful signal mirrors the straight vehicle's strategy") {
  CHECK(truthful_signal(Outcome::O11) == Signal::Rush);
  CHECK(truthful_signal(Outcome::O12) == Signal::Yield);
  CHECK(truthful_signal(Outcome::O21) == Signal::Rush);
  CHECK(truthful_signal(Outcome::O22) == Signal::Yield);
  CHECK(std::string(to_string(Signal::Rush)) == "rush");
  CHECK(std::string(to_string(Signal::Yield)) == "yield");
}

TEST_CASE("expected strategy maximizes the total payoff") {
  const auto u = utility_matrix(kDeception, kP);
  REQUIRE(u.has_value());
  CHECK(u->total(Outcome::O11) == doctest::Approx(3.2109).epsilon(1e-3));
  CHECK(u->total(Outcome::O12) == doctest::Approx(3.9194).epsilon(1e-3));
  CHECK(u->total(Outcome::O21) == doctest::Approx(5.8202).epsilon(1e-3));
  CHECK(u->total(Outcome::O22) == doctest::Approx(0.063).epsilon(1e-2));
  CHECK(expected_strategy(*u) == Outcome::O21);
  CHECK(*expected_strategy(kDeception, kP) == Outcome::O21);

  UtilityMatrix flat;  // equal totals: the tie goes to the lowest index
  CHECK(expected_strategy(flat) == Outcome::O11);

  CHECK_FALSE(expected_strategy(kUndefined, kP).has_value());
}

TEST_CASE("baseline prediction lets the straight vehicle lead") {
  const auto u = utility_matrix(kTruthful, kP);
  REQUIRE(u.has_value());
  CHECK(baseline_outcome(*u) == Outcome::O12);
  CHECK(*baseline_outcome(kTruthful, kP) == Outcome::O12);
  CHECK_FALSE(baseline_outcome(kUndefined, kP).has_value());
}

TEST_CASE("human best response under an attributed acceleration") {
  const Encounter base{"h", {5.0, 0.0, 20.0, 29.5}, {10.0, 0.0, 30.0, 40.0}};

  // believed a = 0: bound is 0 and the turn/yield threshold sits at ~0.61
  Encounter e = base;
  e.turn.a = 1.0;
  CHECK(hv_best_response(e, kP, 0.0) == AStrategy::Turn);
  e.turn.a = 0.0;
  CHECK(hv_best_response(e, kP, 0.0) == AStrategy::Yield);
  e.turn.a = 0.62;
  CHECK(hv_best_response(e, kP, 0.0) == AStrategy::Turn);
  e.turn.a = 0.60;
  CHECK(hv_best_response(e, kP, 0.0) == AStrategy::Yield);

  // believed braking that stops short of the zone frees the turn
  CHECK(hv_best_response(base, kP, -3.0) == AStrategy::Turn);  // stops after 16.7 m
  // believed braking that stalls inside the zone forces a yield
  CHECK(hv_best_response(base, kP, -1.3) == AStrategy::Yield);  // stops after 38.5 m
}

TEST_CASE("deception success criterion") {
  CHECK(deception_success(kDeception, kP, Outcome::O21, kBeliefs));
  CHECK_FALSE(deception_success(kNoSignal, kP, Outcome::O21, kBeliefs));
  CHECK_THROWS_AS(deception_success(kNoDisclose, kP, Outcome::O11, kBeliefs),
                  std::invalid_argument);
  CHECK_THROWS_AS(deception_success(kNoDisclose, kP, Outcome::O22, kBeliefs),
                  std::invalid_argument);
}

TEST_CASE("no disclosure when the baseline already matches") {
  const auto plan = decide(kNoDisclose, kP, 0.5, kBeliefs);
  REQUIRE(plan.has_value());
  CHECK(plan->expected == Outcome::O21);
  CHECK(plan->baseline == Outcome::O21);
  CHECK_FALSE(plan->disclose);
  CHECK_FALSE(plan->signal.has_value());
  CHECK(plan->truthful);
  CHECK_FALSE(plan->deception_success);
  CHECK(plan->predicted == Outcome::O21);
  CHECK(plan->leader);
}

TEST_CASE("truthful disclosure carries the expected outcome") {
  const auto plan = decide(kTruthful, kP, 0.5, kBeliefs);
  REQUIRE(plan.has_value());
  CHECK(plan->expected == Outcome::O11);
  CHECK(plan->baseline == Outcome::O12);
  CHECK(plan->disclose);
  REQUIRE(plan->signal.has_value());
  CHECK(*plan->signal == Signal::Rush);
  CHECK(plan->truthful);
  CHECK_FALSE(plan->deception_success);
  CHECK(plan->predicted == Outcome::O11);
}

TEST_CASE("deceptive fallback when the truthful signal fails") {
  const auto plan = decide(kDeception, kP, 0.5, kBeliefs);
  REQUIRE(plan.has_value());
  CHECK(plan->expected == Outcome::O21);
  CHECK(plan->baseline == Outcome::O12);
  CHECK(plan->disclose);
  REQUIRE(plan->signal.has_value());
  CHECK(*plan->signal == Signal::Yield);
  CHECK_FALSE(plan->truthful);
  CHECK(plan->deception_success);
  CHECK(plan->predicted == Outcome::O21);
}

TEST_CASE("no effective signal keeps the truthful one and records the miss") {
  const auto plan = decide(kNoSignal, kP, 0.5, kBeliefs);
  REQUIRE(plan.has_value());
  CHECK(plan->expected == Outcome::O21);
  CHECK(plan->baseline == Outcome::O11);
  CHECK(plan->disclose);
  REQUIRE(plan->signal.has_value());
  CHECK(*plan->signal == Signal::Rush);
  CHECK(plan->truthful);
  CHECK_FALSE(plan->deception_success);
  CHECK(plan->predicted == Outcome::O11);  // the human turns anyway
}

TEST_CASE("undefined kinematics yield no plan") {
  CHECK_FALSE(decide(kUndefined, kP, 0.5, kBeliefs).has_value());
}

TEST_CASE("payoff census over a small batch") {
  const std::vector<Observation> data = {
      {kNoDisclose, Outcome::O11}, {kTruthful, Outcome::O11},
      {kDeception, Outcome::O11}, {kUndefined, Outcome::O11}};
  const GainCensus census = ehmi_gain_census(data, kP, 0.5, kBeliefs);

  CHECK(census.total == 4);
  CHECK(census.skipped == 1);
  REQUIRE(census.improved.size() == 2);
  CHECK(census.improved[0].id == "E2");
  CHECK(census.improved[1].id == "E3");
  CHECK(census.deceptions_turn_yields == 1);
  CHECK(census.deceptions_av_yields == 0);
  CHECK(census.count_a_up_b_down == 1);
  CHECK(census.count_a_down_b_up == 1);
  CHECK(census.count_both_up == 0);

  const CensusRow& truthful = census.improved[0];
  CHECK(truthful.baseline_total == doctest::Approx(11.5392).epsilon(1e-3));
  CHECK(truthful.ehmi_total == doctest::Approx(12.4881).epsilon(1e-3));
  CHECK(truthful.delta_turn == doctest::Approx(1.7495).epsilon(1e-3));
  CHECK(truthful.delta_straight == doctest::Approx(-0.80058).epsilon(1e-3));

  const CensusRow& deceptive = census.improved[1];
  CHECK(deceptive.baseline_total == doctest::Approx(3.9194).epsilon(1e-3));
  CHECK(deceptive.ehmi_total == doctest::Approx(5.8202).epsilon(1e-3));
  CHECK(deceptive.delta_turn == doctest::Approx(-1.5203).epsilon(1e-3));
  CHECK(deceptive.delta_straight == doctest::Approx(3.4211).epsilon(1e-3));

  CHECK(census.mean_baseline_total == doctest::Approx(7.7293).epsilon(1e-3));
  CHECK(census.mean_ehmi_total == doctest::Approx(9.1542).epsilon(1e-3));
}

TEST_CASE("census of an empty batch") {
  const GainCensus census = ehmi_gain_census({}, kP, 0.5, kBeliefs);
  CHECK(census.total == 0);
  CHECK(census.skipped == 0);
  CHECK(census.improved.empty());
  CHECK(census.mean_baseline_total == 0.0);
  CHECK(census.mean_ehmi_total == 0.0);
}
