#pragma once

#include <vector>

#include "confgate/attack/types.hpp"
#include "confgate/core/oracle.hpp"
#include "confgate/core/types.hpp"

namespace confgate::attack {

// Draws a random direction, removes its component along axis_unit (assumed
// unit length), and normalizes the remainder. Redraws on the measure-zero
// chance of near-collinearity.
std::vector<double> orthogonal_unit(const std::vector<double>& axis_unit,
                                    core::RngStream& rng);

// Gradient-free boundary attack: each round spans a random 2D plane through
// the current boundary point and the source, walks a fan of sign-alternating
// angles along the circular arc that shrinks the distortion, keeps the first
// candidate still misclassified, and refines the accepted angle by bisecting
// the arc. Requires a deterministic decision oracle; throws
// PreconditionViolated otherwise.
AttackTrace attack_surfree_like(const core::Oracle& oracle,
                                const core::InputVector& x_0,
                                const AttackConfig& cfg,
                                core::QueryLedger& ledger,
                                core::RngStream& rng);

}  // namespace confgate::attack
