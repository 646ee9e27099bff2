#pragma once

#include <utility>

#include "confgate/core/oracle.hpp"
#include "confgate/core/types.hpp"

namespace confgate::model {

/// Closed-form two-class model along the segment between an adversarial
/// endpoint (k = 0) and a genuine one (k = 1). Each raw class probability
/// is a floored sigmoid of k:
///
///   p_adv(k)     = eta + (1 - 2 eta) * sig(-s0 * (k - z0))   (decreasing)
///   p_genuine(k) = eta + (1 - 2 eta) * sig( s1 * (k - z1))   (increasing)
///
/// with sig(u) = 1 / (1 + exp(-4u)), i.e. unit slope at its center when
/// s = 1. The floor eta models irreducible label noise.
struct SegmentModel {
  double eta = 0.0;  // noise floor, in [0, 0.5)
  double s0 = 1.0;   // inverse scale of the adversarial-class sigmoid, > 0
  double z0 = 0.5;   // its center
  double s1 = 1.0;   // inverse scale of the genuine-class sigmoid, > 0
  double z1 = 0.5;   // its center
  core::InputVector x_adv;      // endpoint at k = 0
  core::InputVector x_genuine;  // endpoint at k = 1

  void validate() const;
};

/// Raw (unnormalized) pair (p_adv, p_genuine) at position k.
std::pair<double, double> segment_probs_raw(const SegmentModel& m, double k);

/// Normalized class distribution at k, ordered (adversarial, genuine).
core::ProbVector segment_probs(const SegmentModel& m, double k);

/// The k where the raw class probabilities cross:
/// (s0 z0 + s1 z1) / (s0 + s1). Both normalized probabilities equal 1/2
/// there, so the confidence at the crossing is exactly 1/2.
double crossing_point(const SegmentModel& m);

/// Decision oracle backed by a SegmentModel. Queried points are projected
/// onto the segment (clamped to [0,1]) to recover k. In deterministic
/// mode the label is the argmax class; in stochastic mode it is sampled
/// from the normalized distribution, so repeated probes near the crossing
/// behave like fair coin flips.
class SegmentOracle : public core::Oracle {
 public:
  SegmentOracle(SegmentModel m, bool stochastic);

  core::ResponseMode mode() const override {
    return core::ResponseMode::kDecision;
  }
  bool deterministic() const override { return !stochastic_; }

  core::OracleResponse query(const core::InputVector& x,
                             core::RngStream& rng) const override;

  double project(const core::InputVector& x) const;

  static constexpr int kAdvClass = 0;
  static constexpr int kGenuineClass = 1;

 private:
  SegmentModel m_;
  bool stochastic_;
  double seg_norm_sq_;
};

}  // namespace confgate::model
