#include "confgate/defense/gate.hpp"

#include <stdexcept>
#include <utility>

namespace confgate::defense {

using core::InputVector;
using core::OracleResponse;
using core::ProbVector;
using core::ResponseMode;
using core::RngStream;

void GateConfig::validate() const {
  if (!(tau >= 0.0 && tau <= 1.0))
    throw std::invalid_argument("gate threshold must lie in [0, 1]");
}

GatedClassifier::GatedClassifier(model::MlpClassifier model,
                                 model::TemperatureScaler scaler,
                                 DefenseParam defense, GateConfig gate,
                                 ResponseMode mode)
    : model_(std::move(model)),
      scaler_(scaler),
      defense_(defense),
      gate_(gate),
      mode_(mode) {
  gate_.validate();
}

std::size_t GatedClassifier::n_classes() const {
  return model_.sizes().back();
}

bool GatedClassifier::deterministic() const {
  // With tau = 0 the defended branch is unreachable, so a randomized
  // transform never fires.
  return !(defense_randomized(defense_.kind) && gate_.tau > 0.0);
}

GateOutcome GatedClassifier::classify(const InputVector& x,
                                      RngStream& rng) const {
  ProbVector clean = scaler_.apply(model_.forward(x));
  double conf = clean.max();
  // tau = 1 must defend even queries at confidence exactly 1, which a strict
  // comparison alone would let through.
  bool defended = conf < gate_.tau || gate_.tau >= 1.0;
  if (!defended || defense_.kind == DefenseKind::kNone)
    return {std::move(clean), defended, conf};
  InputVector transformed = apply_defense(x, defense_, rng);
  ProbVector out = scaler_.apply(model_.forward(transformed));
  return {std::move(out), true, conf};
}

OracleResponse GatedClassifier::query(const InputVector& x,
                                      RngStream& rng) const {
  GateOutcome outcome = classify(x, rng);
  if (mode_ == ResponseMode::kDecision)
    return OracleResponse::decision(outcome.probs.argmax());
  return OracleResponse::scores(std::move(outcome.probs));
}

}  // namespace confgate::defense
