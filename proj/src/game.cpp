#include "ehmi/game.hpp"

#include <cmath>
#include <stdexcept>

namespace ehmi {

const char* to_string(GameForm f) {
  switch (f) {
    case GameForm::Simultaneous: return "simultaneous";
    case GameForm::SequentialAFirst: return "sequential-a-first";
    case GameForm::SequentialBFirst: return "sequential-b-first";
  }
  return "?";
}

double pairwise_prob(double v_i, double v_j) {
  // The two-branch form keeps exp() in (0, 1] and makes
  // pairwise_prob(x, y) + pairwise_prob(y, x) == 1 bit-exact: the smaller
  // branch is literally 1 - p with p in [0.5, 1], where the subtraction is
  // exact and the final addition rounds the exact value 1.
  if (v_i < v_j) return 1.0 - pairwise_prob(v_j, v_i);
  return 1.0 / (1.0 + std::exp(v_j - v_i));
}

Outcome OutcomeDistribution::argmax() const {
  Outcome best = Outcome::O11;
  for (Outcome o : kOutcomes)
    if (p[index(o)] > p[index(best)]) best = o;
  return best;
}

OutcomeDistribution simultaneous_distribution(const UtilityMatrix& u, double delta) {
  if (!(delta >= 0.0 && delta <= 1.0))
    throw std::invalid_argument("delta must lie in [0, 1]");
  // Best-response inequality probabilities; the four events involve
  // disjoint disturbance pairs, so joint probabilities are plain products.
  const double a = pairwise_prob(u.a[0], u.a[2]);  // A turns against a driving B
  const double c = pairwise_prob(u.a[1], u.a[3]);  // A turns against a yielding B
  const double b = pairwise_prob(u.b[0], u.b[1]);  // B drives against a turning A
  const double d = pairwise_prob(u.b[2], u.b[3]);  // B drives against a yielding A

  // Equilibrium designation per disturbance draw: o11 iff a&b, o12 iff
  // c&!b, o21 iff !a&d, o22 iff !c&!d. Coordination dual {o11,o22} splits
  // delta/(1-delta); anti-coordination dual {o12,o21} splits evenly; draws
  // without a pure equilibrium are excluded and the rest renormalized.
  OutcomeDistribution out;
  out.p[0] = a * b * (1.0 - (1.0 - delta) * (1.0 - c) * (1.0 - d));
  out.p[1] = c * (1.0 - b) * (1.0 - 0.5 * (1.0 - a) * d);
  out.p[2] = (1.0 - a) * d * (1.0 - 0.5 * c * (1.0 - b));
  out.p[3] = (1.0 - c) * (1.0 - d) * (1.0 - delta * a * b);
  const double z = out.sum();
  if (z <= 0.0)
    throw std::domain_error("no pure equilibrium has positive probability");
  for (double& x : out.p) x /= z;
  return out;
}

OutcomeDistribution stackelberg_distribution(const UtilityMatrix& u, GameForm form) {
  OutcomeDistribution out;
  if (form == GameForm::SequentialBFirst) {
    // Follower A's response probabilities per observed B move, then the
    // leader's comparison conditioned on each response sign pattern.
    const double a = pairwise_prob(u.a[0], u.a[2]);  // A turns when B drives
    const double c = pairwise_prob(u.a[1], u.a[3]);  // A turns when B yields
    const double b = pairwise_prob(u.b[0], u.b[1]);
    const double d = pairwise_prob(u.b[2], u.b[3]);
    const double e = pairwise_prob(u.b[0], u.b[3]);
    const double f = pairwise_prob(u.b[1], u.b[2]);
    out.p[0] = a * (c * b + (1.0 - c) * e);
    out.p[1] = c * (a * (1.0 - b) + (1.0 - a) * f);
    out.p[2] = (1.0 - a) * (c * (1.0 - f) + (1.0 - c) * d);
    out.p[3] = (1.0 - c) * (a * (1.0 - e) + (1.0 - a) * (1.0 - d));
    return out;
  }
  if (form == GameForm::SequentialAFirst) {
    const double b = pairwise_prob(u.b[0], u.b[1]);  // B drives when A turns
    const double d = pairwise_prob(u.b[2], u.b[3]);  // B drives when A yields
    const double a = pairwise_prob(u.a[0], u.a[2]);
    const double c = pairwise_prob(u.a[1], u.a[3]);
    const double h = pairwise_prob(u.a[0], u.a[3]);
    const double k = pairwise_prob(u.a[2], u.a[1]);
    out.p[0] = b * (d * a + (1.0 - d) * h);
    out.p[1] = (1.0 - b) * (d * (1.0 - k) + (1.0 - d) * c);
    out.p[2] = d * (b * (1.0 - a) + (1.0 - b) * k);
    out.p[3] = (1.0 - d) * (b * (1.0 - h) + (1.0 - b) * (1.0 - c));
    return out;
  }
  throw std::invalid_argument("stackelberg_distribution needs a sequential form");
}

OutcomeDistribution outcome_distribution(const UtilityMatrix& u, GameForm form,
                                         double delta) {
  if (form == GameForm::Simultaneous) return simultaneous_distribution(u, delta);
  return stackelberg_distribution(u, form);
}

Outcome predict_outcome(const UtilityMatrix& u, GameForm form, double delta) {
  return outcome_distribution(u, form, delta).argmax();
}

std::optional<OutcomeDistribution> outcome_distribution(const Encounter& e,
                                                        const PayoffParams& p,
                                                        GameForm form, double delta,
                                                        const BoundOptions& opt) {
  const auto u = utility_matrix(e, p, opt);
  if (!u) return std::nullopt;
  return outcome_distribution(*u, form, delta);
}

std::optional<Outcome> predict_outcome(const Encounter& e, const PayoffParams& p,
                                       GameForm form, double delta,
                                       const BoundOptions& opt) {
  const auto dist = outcome_distribution(e, p, form, delta, opt);
  if (!dist) return std::nullopt;
  return dist->argmax();
}

std::vector<Outcome> pure_nash_equilibria(const UtilityMatrix& u) {
  std::vector<Outcome> eq;
  if (u.a[0] >= u.a[2] && u.b[0] >= u.b[1]) eq.push_back(Outcome::O11);
  if (u.a[1] >= u.a[3] && u.b[1] >= u.b[0]) eq.push_back(Outcome::O12);
  if (u.a[2] >= u.a[0] && u.b[2] >= u.b[3]) eq.push_back(Outcome::O21);
  if (u.a[3] >= u.a[1] && u.b[3] >= u.b[2]) eq.push_back(Outcome::O22);
  return eq;
}

Outcome backward_induction(const UtilityMatrix& u, GameForm form) {
  if (form == GameForm::SequentialBFirst) {
    const AStrategy vs_drive = u.a[0] >= u.a[2] ? AStrategy::Turn : AStrategy::Yield;
    const AStrategy vs_yield = u.a[1] >= u.a[3] ? AStrategy::Turn : AStrategy::Yield;
    const Outcome if_drive = joint_outcome(vs_drive, BStrategy::Proceed);
    const Outcome if_yield = joint_outcome(vs_yield, BStrategy::Yield);
    return u.b[index(if_drive)] >= u.b[index(if_yield)] ? if_drive : if_yield;
  }
  if (form == GameForm::SequentialAFirst) {
    const BStrategy vs_turn = u.b[0] >= u.b[1] ? BStrategy::Proceed : BStrategy::Yield;
    const BStrategy vs_yield = u.b[2] >= u.b[3] ? BStrategy::Proceed : BStrategy::Yield;
    const Outcome if_turn = joint_outcome(AStrategy::Turn, vs_turn);
    const Outcome if_yield = joint_outcome(AStrategy::Yield, vs_yield);
    return u.a[index(if_turn)] >= u.a[index(if_yield)] ? if_turn : if_yield;
  }
  throw std::invalid_argument("backward_induction needs a sequential form");
}

}  // namespace ehmi
