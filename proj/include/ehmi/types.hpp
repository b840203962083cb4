#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ehmi {

// Player A is the left-turning vehicle, player B the straight-going one.
// A1 turns across the conflict zone, A2 yields; B1 keeps driving, B2 yields.
enum class AStrategy : std::uint8_t { Turn = 0, Yield = 1 };
enum class BStrategy : std::uint8_t { Proceed = 0, Yield = 1 };

// Joint outcome o_ij = (A strategy i, B strategy j).
// Fixed order o11 < o12 < o21 < o22 is also the deterministic tie-break order.
enum class Outcome : std::uint8_t { O11 = 0, O12 = 1, O21 = 2, O22 = 3 };

inline constexpr std::array<Outcome, 4> kOutcomes = {Outcome::O11, Outcome::O12,
                                                     Outcome::O21, Outcome::O22};

constexpr std::size_t index(Outcome o) { return static_cast<std::size_t>(o); }

constexpr AStrategy a_side(Outcome o) {
  return (o == Outcome::O11 || o == Outcome::O12) ? AStrategy::Turn : AStrategy::Yield;
}

constexpr BStrategy b_side(Outcome o) {
  return (o == Outcome::O11 || o == Outcome::O21) ? BStrategy::Proceed : BStrategy::Yield;
}

constexpr Outcome joint_outcome(AStrategy a, BStrategy b) {
  const std::size_t i = static_cast<std::size_t>(a);
  const std::size_t j = static_cast<std::size_t>(b);
  return static_cast<Outcome>(i * 2 + j);
}

const char* to_string(Outcome o);
Outcome outcome_from_string(const std::string& s);

// Snapshot of one vehicle when the interaction starts.
// d is measured to the conflict-zone entry, D to the far edge where the
// vehicle has fully cleared the zone; both along the vehicle's own path.
struct VehicleState {
  double v = 0.0;  // speed [m/s], >= 0
  double a = 0.0;  // acceleration [m/s^2]
  double d = 0.0;  // distance to zone entry [m], 0 < d < D
  double D = 0.0;  // distance to clear the zone [m]
};

// Throws std::invalid_argument when the state violates its invariants.
void validate(const VehicleState& s);

struct Encounter {
  std::string id;
  VehicleState turn;      // player A, left-turning
  VehicleState straight;  // player B, straight-going
};

}  // namespace ehmi
