#pragma once

#include "confgate/attack/types.hpp"
#include "confgate/core/oracle.hpp"
#include "confgate/core/types.hpp"

namespace confgate::attack {

// Gradient-estimation boundary attack: starting from a random misclassified
// sample, repeatedly bisect toward the boundary (the noisy variant when the
// oracle is randomized), estimate the boundary normal with a growing probe
// batch, and take a geometric step along it whose size is halved until the
// candidate is misclassified again. Stops when the query budget or round
// cap runs out and returns the best misclassified candidate observed.
AttackTrace attack_hsja_like(const core::Oracle& oracle,
                             const core::InputVector& x_0,
                             const AttackConfig& cfg,
                             core::QueryLedger& ledger, core::RngStream& rng);

}  // namespace confgate::attack
