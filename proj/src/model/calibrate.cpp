#include "confgate/model/calibrate.hpp"

#include <algorithm>
#include <cmath>

namespace confgate::model {

using core::Label;
using core::ProbVector;

double expected_calibration_error(
    const std::vector<std::vector<double>>& logits,
    const std::vector<Label>& labels, double temperature, int bins) {
  if (logits.empty() || logits.size() != labels.size())
    throw std::invalid_argument("ece: empty or mismatched inputs");
  if (bins < 1) throw std::invalid_argument("ece: bins must be >= 1");

  std::vector<std::size_t> count(static_cast<std::size_t>(bins), 0);
  std::vector<double> conf_sum(static_cast<std::size_t>(bins), 0.0);
  std::vector<double> acc_sum(static_cast<std::size_t>(bins), 0.0);

  for (std::size_t i = 0; i < logits.size(); ++i) {
    ProbVector p = softmax(logits[i], temperature);
    double conf = p.max();
    auto bin = static_cast<std::size_t>(
        std::min<int>(bins - 1, static_cast<int>(conf * bins)));
    ++count[bin];
    conf_sum[bin] += conf;
    acc_sum[bin] += (p.argmax() == labels[i]) ? 1.0 : 0.0;
  }

  double ece = 0.0;
  double n = static_cast<double>(logits.size());
  for (int b = 0; b < bins; ++b) {
    auto ub = static_cast<std::size_t>(b);
    if (count[ub] == 0) continue;
    double m = static_cast<double>(count[ub]);
    ece += (m / n) * std::abs(acc_sum[ub] / m - conf_sum[ub] / m);
  }
  return ece;
}

TemperatureScaler calibrate_temperature(
    const std::vector<std::vector<double>>& logits,
    const std::vector<Label>& labels, const CalibrationConfig& cfg) {
  auto ece_at = [&](double log_t) {
    return expected_calibration_error(logits, labels, std::exp(log_t), cfg.bins);
  };

  // golden-section over log T keeps the bracket ratio scale-free
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::log(cfg.t_lo);
  double b = std::log(cfg.t_hi);
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = ece_at(c);
  double fd = ece_at(d);
  for (int it = 0; it < cfg.iterations; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = ece_at(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = ece_at(d);
    }
  }
  double best_t = std::exp((a + b) / 2.0);

  // the search assumes a unimodal objective; fall back to T = 1 whenever
  // it did not actually improve on the unscaled model
  double best = expected_calibration_error(logits, labels, best_t, cfg.bins);
  double base = expected_calibration_error(logits, labels, 1.0, cfg.bins);
  if (base <= best) return TemperatureScaler{1.0};
  return TemperatureScaler{best_t};
}

std::vector<std::vector<double>> collect_logits(const MlpClassifier& net,
                                                const LabeledDataset& data) {
  std::vector<std::vector<double>> out;
  out.reserve(data.size());
  for (const auto& x : data.xs) out.push_back(net.forward(x));
  return out;
}

TemperatureScaler calibrate_temperature(const MlpClassifier& net,
                                        const LabeledDataset& data,
                                        const CalibrationConfig& cfg) {
  return calibrate_temperature(collect_logits(net, data), data.ys, cfg);
}

ConfidenceHistogram confidence_histogram(const MlpClassifier& net,
                                         const TemperatureScaler& scaler,
                                         const LabeledDataset& data, int bins) {
  if (bins < 1) throw std::invalid_argument("confidence_histogram: bins >= 1");
  ConfidenceHistogram h;
  h.fraction.assign(static_cast<std::size_t>(bins), 0.0);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    ProbVector p = scaler.apply(net.forward(data.xs[i]));
    if (!(p.argmax() == data.ys[i])) continue;
    ++correct;
    auto bin = static_cast<std::size_t>(
        std::min<int>(bins - 1, static_cast<int>(p.max() * bins)));
    h.fraction[bin] += 1.0;
  }
  if (correct == 0)
    throw std::invalid_argument("confidence_histogram: no correct samples");
  for (double& f : h.fraction) f /= static_cast<double>(correct);
  h.cumulative.resize(h.fraction.size());
  double run = 0.0;
  for (std::size_t b = 0; b < h.fraction.size(); ++b) {
    run += h.fraction[b];
    h.cumulative[b] = run;
  }
  return h;
}

}  // namespace confgate::model
