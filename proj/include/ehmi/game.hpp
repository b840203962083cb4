#pragma once

#include <array>
#include <optional>
#include <vector>

#include "ehmi/payoff.hpp"
#include "ehmi/types.hpp"

namespace ehmi {

enum class GameForm { Simultaneous, SequentialAFirst, SequentialBFirst };

const char* to_string(GameForm f);

// P(U_i + e_i >= U_j + e_j) for i.i.d. Gumbel disturbances: the logit
// e^{v_i} / (e^{v_i} + e^{v_j}), evaluated so that
// pairwise_prob(x, y) + pairwise_prob(y, x) == 1 holds bit-exactly.
double pairwise_prob(double v_i, double v_j);

struct OutcomeDistribution {
  std::array<double, 4> p{};

  double operator[](Outcome o) const { return p[index(o)]; }
  double sum() const { return p[0] + p[1] + p[2] + p[3]; }
  Outcome argmax() const;  // ties break toward the lower outcome index
};

// Probability that each outcome is the designated equilibrium when every
// utility carries an independent Gumbel disturbance. Per disturbance draw:
// a unique pure equilibrium designates itself; the coordination dual
// {o11, o22} splits delta / (1-delta); the anti-coordination dual
// {o12, o21} splits evenly; draws without a pure equilibrium carry no
// designation and the four masses are renormalized, so the result always
// sums to 1 within 1e-9.
OutcomeDistribution simultaneous_distribution(const UtilityMatrix& u, double delta);

// Leader-follower play: the follower best-responds to the observed move,
// the leader chooses anticipating the response. Probabilities are exact
// products over the follower-response sign patterns and sum to 1.
OutcomeDistribution stackelberg_distribution(const UtilityMatrix& u, GameForm form);

OutcomeDistribution outcome_distribution(const UtilityMatrix& u, GameForm form,
                                         double delta);

Outcome predict_outcome(const UtilityMatrix& u, GameForm form, double delta);

// Encounter-level wrappers; empty when the utility matrix is undefined.
std::optional<OutcomeDistribution> outcome_distribution(const Encounter& e,
                                                        const PayoffParams& p,
                                                        GameForm form, double delta,
                                                        const BoundOptions& opt = {});
std::optional<Outcome> predict_outcome(const Encounter& e, const PayoffParams& p,
                                       GameForm form, double delta,
                                       const BoundOptions& opt = {});

// Exhaustive weak best-response check over the 2x2 matrix, in outcome order.
std::vector<Outcome> pure_nash_equilibria(const UtilityMatrix& u);

// Deterministic leader/follower argmax play on noise-free utilities.
// Ties resolve toward the lower strategy index. form must be sequential.
Outcome backward_induction(const UtilityMatrix& u, GameForm form);

}  // namespace ehmi
