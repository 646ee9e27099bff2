#pragma once

#include "confgate/attack/types.hpp"
#include "confgate/core/oracle.hpp"
#include "confgate/core/types.hpp"

namespace confgate::attack {

// Convex combination (1 - k) * x_t + k * x_0. k = 0 is the adversarial end,
// k = 1 the genuine end; both endpoints live in [0,1]^d so no clamping is
// needed. Throws for k outside [0, 1] or mismatched shapes.
core::InputVector interpolate(const core::InputVector& x_t,
                              const core::InputVector& x_0, double k);

struct BisectResult {
  core::InputVector sample;  // adversarial-side end of the final bracket
  double k = 0.0;            // interpolation parameter of that sample
  double p_hat = 1.0;        // measured adversarial rate at k (1 when exact)
};

// Binary search for the decision boundary along the segment from x_t
// (misclassified relative to source_label) to x_0 (classified as
// source_label). Returns the adversarial-side end of a bracket no wider
// than params.tolerance, so |k - crossing| <= tolerance. Spends at most
// ceil(log2(1 / tolerance)) + 2 queries, two of which verify the bracket.
BisectResult bisect_deterministic(const core::Oracle& oracle,
                                  const core::InputVector& x_t,
                                  const core::InputVector& x_0,
                                  core::Label source_label,
                                  const BisectionParams& params,
                                  core::QueryLedger& ledger,
                                  core::RngStream& rng);

// Bisection against a randomized oracle whose misclassification probability
// decreases monotonically in k. Each probe spends params.m_repeats queries;
// unanimous batches move the bracket outright, split batches move it only
// when the Wilson interval at params.confidence_z excludes 1/2, and a probe
// whose interval straddles 1/2 stops the search at that point since it is
// statistically indistinguishable from the crossing. With a deterministic
// oracle every batch is unanimous and the search collapses to the exact
// binary search, even at m = 1. Reports the adversarial rate measured at
// the returned point.
BisectResult bisect_noisy(const core::Oracle& oracle,
                          const core::InputVector& x_t,
                          const core::InputVector& x_0,
                          core::Label source_label,
                          const BisectionParams& params,
                          core::QueryLedger& ledger, core::RngStream& rng);

}  // namespace confgate::attack
