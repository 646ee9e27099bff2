#pragma once

#include <vector>

#include "confgate/attack/types.hpp"
#include "confgate/core/oracle.hpp"
#include "confgate/core/types.hpp"

namespace confgate::attack {

// Baseline-subtracted Monte-Carlo combination (1/B) sum_b (phi_b - mean) u_b.
// phis holds the +-1 indicators, us the (unit) probe directions. Throws
// ZeroEstimate when all indicators agree, since the subtraction then
// annihilates every term.
std::vector<double> combine_indicators(const std::vector<double>& phis,
                                       const std::vector<std::vector<double>>& us);

// Estimates the boundary normal at a boundary-adjacent sample by probing
// x_hat + delta * u_b along B uniform unit directions and recording whether
// each probe is misclassified relative to source_label. Spends exactly B
// queries and returns the unit-normalized combination, which points into
// the misclassified region.
std::vector<double> estimate_gradient(const core::Oracle& oracle,
                                      const core::InputVector& x_hat,
                                      core::Label source_label, std::size_t B,
                                      double delta, core::QueryLedger& ledger,
                                      core::RngStream& rng);

}  // namespace confgate::attack
