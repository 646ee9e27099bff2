#include "confgate/eval/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace confgate::eval {

using core::InputVector;
using core::Label;
using core::Oracle;
using core::ProbVector;
using core::RngStream;

double adv_objective(const ProbVector& f, Label s, attack::AttackMode mode) {
  if (mode == attack::AttackMode::kTargeted)
    throw std::logic_error("targeted mode is not implemented");
  if (f.size() < 2)
    throw std::invalid_argument("adversarial objective needs >= 2 classes");
  std::size_t src = static_cast<std::size_t>(s.value);
  if (s.value < 0 || src >= f.size())
    throw std::invalid_argument("source label out of range");
  double best_other = -1.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (i != src && f[i] > best_other) best_other = f[i];
  return best_other - f[src];
}

bool is_successful(const InputVector& x_prime, const InputVector& x_0, Label s,
                   const Oracle& eval_oracle, const attack::AttackConfig& cfg,
                   RngStream& rng) {
  if (!(x_prime.shape == x_0.shape))
    throw std::invalid_argument("is_successful: shape mismatch");
  if (core::distance(x_prime, x_0, cfg.norm) > cfg.epsilon) return false;
  return !(eval_oracle.query(x_prime, rng).label() == s);
}

AsrResult compute_asr(const std::vector<bool>& outcomes) {
  if (outcomes.empty())
    throw std::invalid_argument("cannot compute a success rate of nothing");
  std::size_t succ = 0;
  for (bool b : outcomes)
    if (b) ++succ;
  double asr =
      static_cast<double>(succ) / static_cast<double>(outcomes.size());
  return {asr, 1.0 - asr};
}

double compute_ca(const Oracle& classifier, const model::LabeledDataset& set,
                  const RngStream& base) {
  if (set.size() == 0)
    throw std::invalid_argument("cannot compute accuracy on an empty set");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    RngStream stream = base.fork(i);
    if (classifier.query(set.xs[i], stream).label() == set.ys[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(set.size());
}

void ExperimentPoint::validate() const {
  if (!(ca >= 0.0 && ca <= 1.0))
    throw std::invalid_argument("clean accuracy out of [0, 1]");
  if (!(ra >= 0.0 && ra <= 1.0))
    throw std::invalid_argument("robust accuracy out of [0, 1]");
  if (std::abs(ra - (1.0 - asr)) > 1e-12)
    throw std::invalid_argument("robust accuracy must complement the success rate");
}

}  // namespace confgate::eval
