#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "ehmi/game.hpp"
#include "oracles.hpp"

using namespace ehmi;

namespace {

// shipped coefficients at zero accelerations and zero bounds
UtilityMatrix zero_accel_utilities() {
  UtilityMatrix u;
  u.a = {0.954, 2.440, 3.359, 1.245};
  u.b = {1.277, 2.723, 3.435, 0.565};
  return u;
}

}  // namespace

TEST_CASE("outcome bookkeeping") {
  CHECK(joint_outcome(AStrategy::Turn, BStrategy::Proceed) == Outcome::O11);
  CHECK(joint_outcome(AStrategy::Turn, BStrategy::Yield) == Outcome::O12);
  CHECK(joint_outcome(AStrategy::Yield, BStrategy::Proceed) == Outcome::O21);
  CHECK(joint_outcome(AStrategy::Yield, BStrategy::Yield) == Outcome::O22);
  for (Outcome o : kOutcomes) {
    CHECK(joint_outcome(a_side(o), b_side(o)) == o);
    CHECK(outcome_from_string(to_string(o)) == o);
  }
  CHECK(std::string(to_string(Outcome::O21)) == "o21");
  CHECK_THROWS_AS(outcome_from_string("o13"), std::invalid_argument);
}

TEST_CASE("pairwise_prob is the logistic choice rule") {
  CHECK(pairwise_prob(0.0, 0.0) == 0.5);
  CHECK(pairwise_prob(2.0, 0.0) == doctest::Approx(1.0 / (1.0 + std::exp(-2.0))).epsilon(1e-15));
  CHECK(pairwise_prob(1000.0, 0.0) == 1.0);
  CHECK(pairwise_prob(0.0, 1000.0) == 0.0);
}

TEST_CASE("pairwise_prob complementarity is bit-exact") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> un(-40.0, 40.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = un(rng), y = un(rng);
    CHECK(pairwise_prob(x, y) + pairwise_prob(y, x) == 1.0);
  }
  CHECK(pairwise_prob(700.0, -700.0) + pairwise_prob(-700.0, 700.0) == 1.0);
}

TEST_CASE("indifferent players split every outcome evenly") {
  UtilityMatrix u;  // all zeros
  const auto sim = simultaneous_distribution(u, 0.5);
  for (Outcome o : kOutcomes) CHECK(sim[o] == 0.25);
  const auto seq = stackelberg_distribution(u, GameForm::SequentialBFirst);
  for (Outcome o : kOutcomes) CHECK(seq[o] == doctest::Approx(0.25).epsilon(1e-15));
  const auto seq_a = stackelberg_distribution(u, GameForm::SequentialAFirst);
  for (Outcome o : kOutcomes) CHECK(seq_a[o] == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("simultaneous distribution validates delta and renormalizes") {
  const UtilityMatrix u = zero_accel_utilities();
  CHECK_THROWS_AS(simultaneous_distribution(u, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(simultaneous_distribution(u, 1.1), std::invalid_argument);
  for (double delta : {0.0, 0.3, 1.0}) {
    const auto dist = simultaneous_distribution(u, delta);
    CHECK(std::fabs(dist.sum() - 1.0) <= 1e-12);
  }
}

TEST_CASE("no pure equilibrium with positive probability is an error") {
  // anti-diagonal preferences with overwhelming margins drive every
  // unnormalized mass to exactly zero
  UtilityMatrix u;
  u.a = {1000.0, 0.0, 0.0, 1000.0};
  u.b = {0.0, 1000.0, 1000.0, 0.0};
  CHECK_THROWS_AS(simultaneous_distribution(u, 0.5), std::domain_error);
}

TEST_CASE("stackelberg forms reject the simultaneous tag and vice versa") {
  const UtilityMatrix u = zero_accel_utilities();
  CHECK_THROWS_AS(stackelberg_distribution(u, GameForm::Simultaneous),
                  std::invalid_argument);
  CHECK_THROWS_AS(backward_induction(u, GameForm::Simultaneous), std::invalid_argument);
}

TEST_CASE("pure Nash equilibria of the zero-acceleration game") {
  const auto eq = pure_nash_equilibria(zero_accel_utilities());
  REQUIRE(eq.size() == 2);
  CHECK(eq[0] == Outcome::O12);
  CHECK(eq[1] == Outcome::O21);
}

TEST_CASE("weak inequalities keep ties in the equilibrium set") {
  UtilityMatrix u;  // all zeros: every cell is a weak equilibrium
  CHECK(pure_nash_equilibria(u).size() == 4);
}

TEST_CASE("backward induction on the zero-acceleration game") {
  const UtilityMatrix u = zero_accel_utilities();
  CHECK(backward_induction(u, GameForm::SequentialBFirst) == Outcome::O21);
  CHECK(backward_induction(u, GameForm::SequentialAFirst) == Outcome::O21);

  UtilityMatrix flat;  // ties resolve toward the lower outcome index
  CHECK(backward_induction(flat, GameForm::SequentialBFirst) == Outcome::O11);
  CHECK(backward_induction(flat, GameForm::SequentialAFirst) == Outcome::O11);
}

TEST_CASE("argmax ties break toward the lower outcome index") {
  OutcomeDistribution d;
  d.p = {0.3, 0.3, 0.2, 0.2};
  CHECK(d.argmax() == Outcome::O11);
  d.p = {0.2, 0.3, 0.3, 0.2};
  CHECK(d.argmax() == Outcome::O12);
}

TEST_CASE("closed forms match the Monte Carlo oracle") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 3; ++i) {
    const UtilityMatrix u = oracle::random_utilities(rng);
    const double delta = 0.3;

    const auto sim = simultaneous_distribution(u, delta);
    const auto sim_mc = oracle::mc_simultaneous(u, delta, 300000, 1000 + i);
    for (Outcome o : kOutcomes) CHECK(std::fabs(sim[o] - sim_mc[index(o)]) <= 0.01);

    const auto bf = stackelberg_distribution(u, GameForm::SequentialBFirst);
    const auto bf_mc = oracle::mc_sequential(u, true, 300000, 2000 + i);
    for (Outcome o : kOutcomes) CHECK(std::fabs(bf[o] - bf_mc[index(o)]) <= 0.01);

    const auto af = stackelberg_distribution(u, GameForm::SequentialAFirst);
    const auto af_mc = oracle::mc_sequential(u, false, 300000, 3000 + i);
    for (Outcome o : kOutcomes) CHECK(std::fabs(af[o] - af_mc[index(o)]) <= 0.01);
  }
}

TEST_CASE("encounter-level wrappers reuse the utility matrix") {
  const PayoffParams p = oracle::shipped_params();
  const Encounter e{"e", {5.0, 0.0, 20.0, 29.5}, {10.0, 0.0, 30.0, 40.0}};
  const auto u = utility_matrix(e, p);
  REQUIRE(u.has_value());

  for (GameForm form : {GameForm::Simultaneous, GameForm::SequentialAFirst,
                        GameForm::SequentialBFirst}) {
    const auto direct = outcome_distribution(*u, form, 0.5);
    const auto wrapped = outcome_distribution(e, p, form, 0.5);
    REQUIRE(wrapped.has_value());
    for (Outcome o : kOutcomes) CHECK((*wrapped)[o] == direct[o]);
    CHECK(*predict_outcome(e, p, form, 0.5) == direct.argmax());
  }

  const Encounter undefined{"u", {5.0, 0.0, 20.0, 29.5}, {2.0, -1.0, 21.0, 31.0}};
  CHECK_FALSE(outcome_distribution(undefined, p, GameForm::Simultaneous, 0.5).has_value());
  CHECK_FALSE(predict_outcome(undefined, p, GameForm::SequentialBFirst, 0.5).has_value());
}

TEST_CASE("no-signal baseline prediction for the zero-acceleration game") {
  // straight vehicle leads; o21 carries most of the probability
  const auto dist = stackelberg_distribution(zero_accel_utilities(),
                                             GameForm::SequentialBFirst);
  CHECK(dist.argmax() == Outcome::O21);
  CHECK(dist[Outcome::O21] > 0.5);
}
