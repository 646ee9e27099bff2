#pragma once

#include "confgate/core/oracle.hpp"
#include "confgate/core/types.hpp"
#include "confgate/defense/transforms.hpp"
#include "confgate/model/calibrate.hpp"
#include "confgate/model/mlp.hpp"

namespace confgate::defense {

struct GateConfig {
  double tau = 0.0;  // defend when calibrated confidence falls below this

  void validate() const;
};

// What a single gated classification did, for callers that need more than
// the final response.
struct GateOutcome {
  core::ProbVector probs;       // distribution actually returned
  bool defended = false;        // whether the transformed branch was taken
  double gate_confidence = 0;   // clean calibrated confidence that drove the gate
};

// Classifier wrapper that answers most queries with the plain model and
// reroutes low-confidence queries through an input transformation before
// classifying again. tau = 0 never defends; tau = 1 defends every query,
// including those at confidence exactly 1. However many forward passes a
// query costs internally, the caller is billed for one oracle query.
//
// The rng parameter is only consumed on the defended branch, so an attacker
// staying above the gate threshold observes a fully deterministic model.
class GatedClassifier : public core::Oracle {
 public:
  GatedClassifier(model::MlpClassifier model, model::TemperatureScaler scaler,
                  DefenseParam defense, GateConfig gate,
                  core::ResponseMode mode);

  GateOutcome classify(const core::InputVector& x, core::RngStream& rng) const;

  core::ResponseMode mode() const override { return mode_; }
  bool deterministic() const override;
  core::OracleResponse query(const core::InputVector& x,
                             core::RngStream& rng) const override;

  const DefenseParam& defense() const { return defense_; }
  const GateConfig& gate() const { return gate_; }
  std::size_t n_classes() const;

 private:
  model::MlpClassifier model_;
  model::TemperatureScaler scaler_;
  DefenseParam defense_;
  GateConfig gate_;
  core::ResponseMode mode_;
};

}  // namespace confgate::defense
