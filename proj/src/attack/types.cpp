#include "confgate/attack/types.hpp"

#include <cmath>

namespace confgate::attack {

void BisectionParams::validate() const {
  if (!(tolerance > 0.0))
    throw std::invalid_argument("bisection tolerance must be > 0");
  if (m_repeats < 1)
    throw std::invalid_argument("bisection repeats must be >= 1");
  if (max_steps < 1)
    throw std::invalid_argument("bisection step cap must be >= 1");
  if (!(confidence_z >= 0.0))
    throw std::invalid_argument("bisection confidence multiplier must be >= 0");
}

std::string to_string(AttackKind kind) {
  switch (kind) {
    case AttackKind::kHsjaLike: return "hsja";
    case AttackKind::kSurfreeLike: return "surfree";
  }
  throw std::logic_error("to_string: bad AttackKind");
}

AttackKind attack_from_string(const std::string& name) {
  if (name == "hsja") return AttackKind::kHsjaLike;
  if (name == "surfree") return AttackKind::kSurfreeLike;
  throw std::invalid_argument("unknown attack kind: " + name);
}

void AttackConfig::validate() const {
  if (budget < 1) throw std::invalid_argument("query budget must be >= 1");
  if (!(epsilon > 0.0))
    throw std::invalid_argument("distortion bound must be > 0");
  if (init_cap < 1) throw std::invalid_argument("init cap must be >= 1");
  if (b0 < 2) throw std::invalid_argument("gradient batch size must be >= 2");
  if (max_rounds < 1) throw std::invalid_argument("round cap must be >= 1");
  if (!(theta_max > 0.0 && theta_max < 1.5707963267948966))
    throw std::invalid_argument("arc half-range must lie in (0, pi/2)");
  bisect.validate();
}

}  // namespace confgate::attack
