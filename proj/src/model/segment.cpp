#include "confgate/model/segment.hpp"

#include <algorithm>
#include <cmath>

namespace confgate::model {

using core::InputVector;
using core::Label;
using core::OracleResponse;
using core::ProbVector;

namespace {

double unit_sigmoid(double u) { return 1.0 / (1.0 + std::exp(-4.0 * u)); }

}  // namespace

void SegmentModel::validate() const {
  if (!(eta >= 0.0 && eta < 0.5))
    throw std::invalid_argument("SegmentModel: eta outside [0, 0.5)");
  if (!(s0 > 0.0 && s1 > 0.0))
    throw std::invalid_argument("SegmentModel: scales must be positive");
}

std::pair<double, double> segment_probs_raw(const SegmentModel& m, double k) {
  m.validate();
  double span = 1.0 - 2.0 * m.eta;
  double p_adv = m.eta + span * unit_sigmoid(-m.s0 * (k - m.z0));
  double p_gen = m.eta + span * unit_sigmoid(m.s1 * (k - m.z1));
  return {p_adv, p_gen};
}

ProbVector segment_probs(const SegmentModel& m, double k) {
  auto [p_adv, p_gen] = segment_probs_raw(m, k);
  double sum = p_adv + p_gen;
  return ProbVector({p_adv / sum, p_gen / sum});
}

double crossing_point(const SegmentModel& m) {
  m.validate();
  return (m.s0 * m.z0 + m.s1 * m.z1) / (m.s0 + m.s1);
}

SegmentOracle::SegmentOracle(SegmentModel m, bool stochastic)
    : m_(std::move(m)), stochastic_(stochastic) {
  m_.validate();
  if (m_.x_adv.size() == 0 || m_.x_adv.size() != m_.x_genuine.size())
    throw std::invalid_argument("SegmentOracle: endpoints missing or mismatched");
  seg_norm_sq_ = 0.0;
  for (std::size_t i = 0; i < m_.x_adv.size(); ++i) {
    double d = m_.x_genuine[i] - m_.x_adv[i];
    seg_norm_sq_ += d * d;
  }
  if (seg_norm_sq_ == 0.0)
    throw std::invalid_argument("SegmentOracle: endpoints coincide");
}

double SegmentOracle::project(const InputVector& x) const {
  double dot = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    dot += (x[i] - m_.x_adv[i]) * (m_.x_genuine[i] - m_.x_adv[i]);
  return std::clamp(dot / seg_norm_sq_, 0.0, 1.0);
}

OracleResponse SegmentOracle::query(const InputVector& x,
                                    core::RngStream& rng) const {
  ProbVector p = segment_probs(m_, project(x));
  if (!stochastic_) return OracleResponse::decision(p.argmax());
  int label = rng.uniform01() < p[kAdvClass] ? kAdvClass : kGenuineClass;
  return OracleResponse::decision(Label(label));
}

}  // namespace confgate::model
