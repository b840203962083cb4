#include "ehmi/types.hpp"

#include <cmath>

namespace ehmi {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::O11: return "o11";
    case Outcome::O12: return "o12";
    case Outcome::O21: return "o21";
    case Outcome::O22: return "o22";
  }
  return "?";
}

Outcome outcome_from_string(const std::string& s) {
  for (Outcome o : kOutcomes) {
    if (s == to_string(o)) return o;
  }
  throw std::invalid_argument("unknown outcome label: " + s);
}

void validate(const VehicleState& s) {
  if (!(std::isfinite(s.v) && std::isfinite(s.a) && std::isfinite(s.d) && std::isfinite(s.D)))
    throw std::invalid_argument("vehicle state must be finite");
  if (s.v < 0.0) throw std::invalid_argument("vehicle speed must be >= 0");
  if (!(s.d > 0.0)) throw std::invalid_argument("distance to zone entry must be > 0");
  if (!(s.D > s.d)) throw std::invalid_argument("zone exit distance must exceed entry distance");
}

}  // namespace ehmi
