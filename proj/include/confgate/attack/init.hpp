#pragma once

#include "confgate/attack/types.hpp"
#include "confgate/core/oracle.hpp"
#include "confgate/core/types.hpp"

namespace confgate::attack {

// Finds a starting point the oracle misclassifies relative to source_label
// by drawing uniform-random samples from [0,1]^d (the usual highly distorted
// initialization). Throws InitFailure after init_cap unsuccessful draws.
core::InputVector init_adversarial(const core::Oracle& oracle,
                                   const core::InputVector& x_0,
                                   core::Label source_label,
                                   std::size_t init_cap,
                                   core::QueryLedger& ledger,
                                   core::RngStream& rng);

}  // namespace confgate::attack
