#pragma once

#include <cstdint>
#include <vector>

#include "confgate/attack/types.hpp"
#include "confgate/core/oracle.hpp"
#include "confgate/core/types.hpp"
#include "confgate/defense/transforms.hpp"
#include "confgate/model/dataset.hpp"

namespace confgate::eval {

// Untargeted misclassification margin max_{i != s} f_i - f_s: positive iff
// the scores rank some other class above the source label, zero exactly on
// the boundary. Requires at least two classes.
double adv_objective(const core::ProbVector& f, core::Label s,
                     attack::AttackMode mode);

// Whether a candidate counts as a successful adversarial example: the
// evaluation classifier must misclassify it AND it must sit within the
// distortion bound (inclusive). Randomized classifiers are evaluated on a
// single draw from the caller's dedicated stream, keeping the verdict
// reproducible.
bool is_successful(const core::InputVector& x_prime,
                   const core::InputVector& x_0, core::Label s,
                   const core::Oracle& eval_oracle,
                   const attack::AttackConfig& cfg, core::RngStream& rng);

struct AsrResult {
  double asr = 0.0;
  double ra = 1.0;
};

// Success ratio over attacked samples; RA is its exact complement.
AsrResult compute_asr(const std::vector<bool>& outcomes);

// Fraction of the set the classifier labels correctly. Each sample gets its
// own forked stream off `base`, so randomized defenses are judged on one
// frozen draw per sample and the result is schedule-independent.
double compute_ca(const core::Oracle& classifier,
                  const model::LabeledDataset& set, const core::RngStream& base);

// One grid cell: a defense configuration plus the measured tradeoff.
struct ExperimentPoint {
  attack::AttackKind attack = attack::AttackKind::kHsjaLike;
  defense::DefenseParam defense;
  double tau = 0.0;
  double ca = 0.0;
  double ra = 1.0;
  double asr = 0.0;
  double mean_queries = 0.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;

  void validate() const;  // ca/ra in [0,1], ra complements asr
};

}  // namespace confgate::eval
