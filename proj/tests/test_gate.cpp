#include <doctest.h>

#include <cmath>

#include "confgate/core/oracle.hpp"
#include "confgate/defense/gate.hpp"

using namespace confgate;
using core::InputVector;
using core::ProbVector;
using core::ResponseMode;
using core::RngStream;
using core::Shape;
using defense::DefenseKind;
using defense::GateConfig;
using defense::GatedClassifier;

namespace {

model::MlpClassifier random_net(std::uint64_t seed) {
  RngStream rng(seed);
  return model::MlpClassifier::random_init({2, 4, 3}, rng);
}

// Linear 2-class net whose first weight is huge: the input (1,1) produces
// logits hundreds apart, so its softmax confidence is exactly 1.0 in double
// precision, while (0,0) gives zero logits and confidence exactly 0.5.
model::MlpClassifier saturating_net() {
  RngStream rng(1);
  auto net = model::MlpClassifier::random_init({2, 2}, rng);
  for (std::size_t i = 0; i < net.n_params(); ++i) net.set_param(i, 0.0);
  net.set_param(0, 400.0);
  return net;
}

InputVector point(double a, double b) {
  return InputVector(Shape(std::size_t(2)), {a, b});
}

bool consumed(const RngStream& before, const RngStream& after) {
  RngStream b = before;
  RngStream a = after;
  return b.next_u64() != a.next_u64();
}

}  // namespace

TEST_SUITE("gate") {

TEST_CASE("threshold zero never defends and answers exactly like the model") {
  auto net = random_net(5);
  model::TemperatureScaler scaler{0.7};
  GatedClassifier gated(net, scaler, {DefenseKind::kRnd, 0.4}, {0.0},
                        ResponseMode::kScore);
  RngStream data_rng(88);
  for (int rep = 0; rep < 50; ++rep) {
    InputVector x = point(data_rng.uniform01(), data_rng.uniform01());
    RngStream rng(rep);
    RngStream pristine = rng;
    defense::GateOutcome out = gated.classify(x, rng);
    CHECK_FALSE(out.defended);
    ProbVector clean = scaler.apply(net.forward(x));
    CHECK(out.probs.values() == clean.values());
    CHECK(out.gate_confidence == clean.max());
    CHECK_FALSE(consumed(pristine, rng));
  }
}

TEST_CASE("threshold one defends even a query at confidence exactly 1") {
  auto net = saturating_net();
  model::TemperatureScaler scaler{1.0};
  InputVector x = point(1.0, 1.0);
  ProbVector clean = scaler.apply(net.forward(x));
  REQUIRE(clean.max() == 1.0);  // the interesting boundary case

  GatedClassifier gated(net, scaler, {DefenseKind::kRnd, 0.5}, {1.0},
                        ResponseMode::kScore);
  RngStream rng(4);
  RngStream pristine = rng;
  defense::GateOutcome out = gated.classify(x, rng);
  CHECK(out.defended);
  CHECK(out.gate_confidence == 1.0);
  CHECK(consumed(pristine, rng));
}

TEST_CASE("randomness flows only through the defended branch") {
  auto net = saturating_net();
  GatedClassifier gated(net, model::TemperatureScaler{1.0},
                        {DefenseKind::kRnd, 0.3}, {0.6},
                        ResponseMode::kDecision);

  InputVector confident = point(1.0, 1.0);  // confidence 1.0, above the gate
  RngStream rng1(9);
  RngStream pristine1 = rng1;
  defense::GateOutcome high = gated.classify(confident, rng1);
  CHECK_FALSE(high.defended);
  CHECK_FALSE(consumed(pristine1, rng1));

  InputVector uncertain = point(0.0, 0.0);  // zero logits, confidence 0.5
  RngStream rng2(9);
  RngStream pristine2 = rng2;
  defense::GateOutcome low = gated.classify(uncertain, rng2);
  CHECK(low.defended);
  CHECK(low.gate_confidence == 0.5);
  CHECK(consumed(pristine2, rng2));
}

TEST_CASE("defended queries replay exactly under the same stream") {
  auto net = random_net(6);
  GatedClassifier gated(net, model::TemperatureScaler{1.0},
                        {DefenseKind::kRnd, 0.8}, {1.0}, ResponseMode::kScore);
  InputVector x = point(0.3, 0.7);
  RngStream a(123);
  RngStream b(123);
  CHECK(gated.classify(x, a).probs.values() ==
        gated.classify(x, b).probs.values());
}

TEST_CASE("a disabled transform short-circuits the second forward pass") {
  auto net = random_net(7);
  model::TemperatureScaler scaler{1.0};
  GatedClassifier gated(net, scaler, {DefenseKind::kNone, 0.0}, {1.0},
                        ResponseMode::kScore);
  InputVector x = point(0.2, 0.9);
  RngStream rng(3);
  RngStream pristine = rng;
  defense::GateOutcome out = gated.classify(x, rng);
  CHECK(out.defended);  // the gate fired, the transform just has no effect
  CHECK(out.probs.values() == scaler.apply(net.forward(x)).values());
  CHECK_FALSE(consumed(pristine, rng));
}

TEST_CASE("an attacker-visible determinism flag tracks kind and threshold") {
  auto net = random_net(8);
  model::TemperatureScaler s{1.0};
  auto flag = [&](DefenseKind k, double nu, double tau) {
    return GatedClassifier(net, s, {k, nu}, {tau}, ResponseMode::kDecision)
        .deterministic();
  };
  CHECK(flag(DefenseKind::kRnd, 0.3, 0.0));    // gate never fires
  CHECK_FALSE(flag(DefenseKind::kRnd, 0.3, 0.4));
  CHECK_FALSE(flag(DefenseKind::kRcr, 2.0, 1.0));
  CHECK(flag(DefenseKind::kJpeg, 75.0, 0.9));  // deterministic transform
  CHECK(flag(DefenseKind::kNone, 0.0, 1.0));
}

TEST_CASE("decision mode answers with the argmax of the same distribution") {
  auto net = random_net(9);
  model::TemperatureScaler s{1.0};
  GatedClassifier scorer(net, s, {DefenseKind::kRnd, 0.5}, {1.0},
                         ResponseMode::kScore);
  GatedClassifier decider(net, s, {DefenseKind::kRnd, 0.5}, {1.0},
                          ResponseMode::kDecision);
  InputVector x = point(0.4, 0.4);
  RngStream a(77);
  RngStream b(77);
  core::OracleResponse scores = scorer.query(x, a);
  core::OracleResponse decision = decider.query(x, b);
  CHECK(decision.label() == scores.probs().argmax());
}

TEST_CASE("one billed query regardless of internal passes") {
  auto net = saturating_net();
  GatedClassifier gated(net, model::TemperatureScaler{1.0},
                        {DefenseKind::kRnd, 0.5}, {1.0},
                        ResponseMode::kDecision);
  core::QueryLedger ledger(1);  // enough for exactly one billed query
  RngStream rng(2);
  core::oracle_query(gated, point(0.0, 0.0), ledger, rng);  // defended path
  CHECK(ledger.used() == 1);
  CHECK(ledger.remaining() == 0);
}

TEST_CASE("threshold validation") {
  CHECK_THROWS_AS(GateConfig{-0.01}.validate(), std::invalid_argument);
  CHECK_THROWS_AS(GateConfig{1.01}.validate(), std::invalid_argument);
  auto net = random_net(10);
  CHECK_THROWS_AS(GatedClassifier(net, model::TemperatureScaler{1.0},
                                  {DefenseKind::kRnd, 0.1}, {1.5},
                                  ResponseMode::kScore),
                  std::invalid_argument);
}

}  // TEST_SUITE
