#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "ehmi/kinematics.hpp"
#include "ehmi/types.hpp"

namespace ehmi {

// Affine utility model per player and joint outcome:
//   U_ij = c0 + c1 * own_accel (+ c2 * collision_avoid_accel)
// The c2 term exists only where the opponent keeps driving toward the zone,
// i.e. outcomes o11, o21 for player A and o11, o12 for player B.
// 20 coefficients total.

struct MissingAccelBound : std::invalid_argument {
  explicit MissingAccelBound(const std::string& what) : std::invalid_argument(what) {}
};
struct SpuriousAccelBound : std::invalid_argument {
  explicit SpuriousAccelBound(const std::string& what) : std::invalid_argument(what) {}
};

struct PayoffParams {
  // coefficient slot k of outcome o for each player; unused slots stay 0
  std::array<std::array<double, 3>, 4> alpha{};  // player A
  std::array<std::array<double, 3>, 4> beta{};   // player B

  static bool a_has_bound_term(Outcome o) { return b_side(o) == BStrategy::Proceed; }
  static bool b_has_bound_term(Outcome o) { return a_side(o) == AStrategy::Turn; }
};

inline constexpr std::size_t kParamCount = 20;

// Flattening order matches the parameter-file key order (alpha.11.0 ...
// beta.22.1, keys sorted); used by the calibration optimizer.
std::array<double, kParamCount> pack(const PayoffParams& p);
PayoffParams unpack(std::span<const double, kParamCount> v);

// accel_bound must be provided exactly for the outcomes carrying the c2
// term; MissingAccelBound / SpuriousAccelBound otherwise.
double payoff_a(const PayoffParams& p, Outcome o, double accel_a,
                std::optional<double> accel_bound_a = std::nullopt);
double payoff_b(const PayoffParams& p, Outcome o, double accel_b,
                std::optional<double> accel_bound_b = std::nullopt);

// Deterministic utilities of both players for all four outcomes.
struct UtilityMatrix {
  std::array<double, 4> a{};
  std::array<double, 4> b{};

  double total(Outcome o) const { return a[index(o)] + b[index(o)]; }
};

// Empty when either collision-avoidance bound is undefined (the opponent
// never clears the zone under its current state).
std::optional<UtilityMatrix> utility_matrix(const Encounter& e, const PayoffParams& p,
                                            const BoundOptions& opt = {});

std::optional<double> total_payoff(const Encounter& e, const PayoffParams& p, Outcome o,
                                   const BoundOptions& opt = {});

// Flat `key = value` text document, keys alpha.11.0 .. beta.22.1.
// Values round-trip bit-exactly through save/load.
PayoffParams load_params(const std::string& path);
void save_params(const PayoffParams& p, const std::string& path);
PayoffParams parse_params_text(const std::string& text);
std::string params_to_text(const PayoffParams& p);

}  // namespace ehmi
