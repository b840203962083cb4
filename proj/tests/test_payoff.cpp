#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "ehmi/payoff.hpp"
#include "oracles.hpp"

using namespace ehmi;

namespace {
const PayoffParams kP = oracle::shipped_params();
}

TEST_CASE("player A payoffs, shipped coefficients") {
  CHECK(payoff_a(kP, Outcome::O11, 1.0, 2.0) == doctest::Approx(8.607).epsilon(1e-12));
  CHECK(payoff_a(kP, Outcome::O12, -0.5) == doctest::Approx(0.965).epsilon(1e-12));
  CHECK(payoff_a(kP, Outcome::O21, 0.5, 2.0) == doctest::Approx(13.442).epsilon(1e-12));
  CHECK(payoff_a(kP, Outcome::O22, 1.0) == doctest::Approx(0.013).epsilon(1e-9));
}

TEST_CASE("player B payoffs, shipped coefficients") {
  CHECK(payoff_b(kP, Outcome::O11, 1.0, 2.0) == doctest::Approx(7.563).epsilon(1e-12));
  CHECK(payoff_b(kP, Outcome::O12, 1.0, 1.0) == doctest::Approx(5.942).epsilon(1e-12));
  CHECK(payoff_b(kP, Outcome::O21, 1.0) == doctest::Approx(6.404).epsilon(1e-12));
  CHECK(payoff_b(kP, Outcome::O21, 2.0) == doctest::Approx(9.373).epsilon(1e-12));
  CHECK(payoff_b(kP, Outcome::O22, 0.0) == doctest::Approx(0.565).epsilon(1e-12));
  CHECK(payoff_b(kP, Outcome::O22, 1.0) == doctest::Approx(1.595).epsilon(1e-12));
}

TEST_CASE("bound-term bookkeeping is enforced") {
  // A carries the bound when B keeps driving (o11, o21); B when A turns (o11, o12)
  CHECK(PayoffParams::a_has_bound_term(Outcome::O11));
  CHECK_FALSE(PayoffParams::a_has_bound_term(Outcome::O12));
  CHECK(PayoffParams::a_has_bound_term(Outcome::O21));
  CHECK_FALSE(PayoffParams::a_has_bound_term(Outcome::O22));
  CHECK(PayoffParams::b_has_bound_term(Outcome::O11));
  CHECK(PayoffParams::b_has_bound_term(Outcome::O12));
  CHECK_FALSE(PayoffParams::b_has_bound_term(Outcome::O21));
  CHECK_FALSE(PayoffParams::b_has_bound_term(Outcome::O22));

  CHECK_THROWS_AS(payoff_a(kP, Outcome::O11, 1.0), MissingAccelBound);
  CHECK_THROWS_AS(payoff_a(kP, Outcome::O12, 1.0, 0.5), SpuriousAccelBound);
  CHECK_THROWS_AS(payoff_b(kP, Outcome::O12, 1.0), MissingAccelBound);
  CHECK_THROWS_AS(payoff_b(kP, Outcome::O21, 1.0, 0.0), SpuriousAccelBound);
}

TEST_CASE("zero-acceleration totals") {
  CHECK(payoff_a(kP, Outcome::O11, 0.0, 0.0) + payoff_b(kP, Outcome::O11, 0.0, 0.0) ==
        doctest::Approx(2.231).epsilon(1e-12));
  CHECK(payoff_a(kP, Outcome::O12, 0.0) + payoff_b(kP, Outcome::O12, 0.0, 0.0) ==
        doctest::Approx(5.163).epsilon(1e-12));
  CHECK(payoff_a(kP, Outcome::O21, 0.0, 0.0) + payoff_b(kP, Outcome::O21, 0.0) ==
        doctest::Approx(6.794).epsilon(1e-12));
  CHECK(payoff_a(kP, Outcome::O22, 0.0) + payoff_b(kP, Outcome::O22, 0.0) ==
        doctest::Approx(1.810).epsilon(1e-12));
}

TEST_CASE("pack/unpack use the key order and skip absent slots") {
  const auto flat = pack(kP);
  CHECK(flat[0] == 0.954);    // alpha.11.0
  CHECK(flat[2] == 1.273);    // alpha.11.2
  CHECK(flat[3] == 2.440);    // alpha.12.0
  CHECK(flat[9] == -1.232);   // alpha.22.1
  CHECK(flat[10] == 1.277);   // beta.11.0
  CHECK(flat[15] == 2.495);   // beta.12.2
  CHECK(flat[16] == 3.435);   // beta.21.0
  CHECK(flat[19] == 1.030);   // beta.22.1

  const PayoffParams back = unpack(flat);
  CHECK(pack(back) == flat);
  for (Outcome o : kOutcomes) {
    CHECK(back.alpha[index(o)] == kP.alpha[index(o)]);
    CHECK(back.beta[index(o)] == kP.beta[index(o)]);
  }
}

TEST_CASE("utility matrix from an encounter") {
  const Encounter e{"e", {5.0, 0.0, 20.0, 29.5}, {10.0, 0.0, 30.0, 40.0}};
  const auto u = utility_matrix(e, kP);
  REQUIRE(u.has_value());
  // bound for A is exactly 0, bound for B is 2*(30 - 59)/5.9^2
  CHECK(u->a[0] == doctest::Approx(0.954).epsilon(1e-9));
  CHECK(u->a[1] == doctest::Approx(2.440).epsilon(1e-12));
  CHECK(u->a[2] == doctest::Approx(3.359).epsilon(1e-9));
  CHECK(u->a[3] == doctest::Approx(1.245).epsilon(1e-12));
  CHECK(u->b[0] == doctest::Approx(-1.23063).epsilon(1e-4));
  CHECK(u->b[1] == doctest::Approx(-1.43417).epsilon(1e-4));
  CHECK(u->b[2] == doctest::Approx(3.435).epsilon(1e-12));
  CHECK(u->b[3] == doctest::Approx(0.565).epsilon(1e-12));

  CHECK(u->total(Outcome::O21) == doctest::Approx(6.794).epsilon(1e-9));
  CHECK(*total_payoff(e, kP, Outcome::O21) == doctest::Approx(6.794).epsilon(1e-9));
}

TEST_CASE("utility matrix is empty when a bound is undefined") {
  // straight vehicle stalls before clearing -> A-side bound undefined
  const Encounter e1{"e1", {5.0, 0.0, 20.0, 29.5}, {2.0, -1.0, 21.0, 31.0}};
  CHECK_FALSE(utility_matrix(e1, kP).has_value());
  CHECK_FALSE(total_payoff(e1, kP, Outcome::O11).has_value());

  // turning vehicle stalls -> B-side bound undefined
  const Encounter e2{"e2", {2.0, -1.0, 21.0, 31.0}, {10.0, 0.0, 30.0, 40.0}};
  CHECK_FALSE(utility_matrix(e2, kP).has_value());
}

TEST_CASE("parameter text round trip is exact") {
  const std::string text = params_to_text(kP);
  const PayoffParams back = parse_params_text(text);
  CHECK(pack(back) == pack(kP));

  // values with no finite decimal expansion survive as well
  PayoffParams odd = kP;
  odd.alpha[0][0] = 1.0 / 3.0;
  odd.beta[3][1] = -7.0 / 11.0;
  CHECK(pack(parse_params_text(params_to_text(odd))) == pack(odd));
}

TEST_CASE("parameter text rejects malformed input") {
  CHECK_THROWS_AS(parse_params_text("alpha.11.0 0.954\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_params_text("alpha.11.0 = nope\n"), std::invalid_argument);
  const std::string text = params_to_text(kP);
  CHECK_THROWS_AS(parse_params_text(text + "alpha.11.0 = 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_params_text(text + "gamma.11.0 = 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_params_text("alpha.11.0 = 1\n"), std::invalid_argument);  // missing keys
  CHECK_NOTHROW(parse_params_text("# comment only\n" + text));
}

TEST_CASE("parameter files round trip and the shipped file matches") {
  const auto dir = oracle::scratch_dir("payoff");
  const std::string path = (dir / "p.params").string();
  save_params(kP, path);
  CHECK(pack(load_params(path)) == pack(kP));

  CHECK(pack(load_params(std::string(EHMI_SOURCE_DIR) + "/config/default.params")) ==
        pack(kP));

  CHECK_THROWS_AS(load_params((dir / "missing.params").string()), std::runtime_error);
}
