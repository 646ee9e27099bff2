#pragma once

#include <vector>

#include "confgate/core/types.hpp"
#include "confgate/model/mlp.hpp"

namespace confgate::model {

/// Post-hoc confidence rescaling: probabilities are softmax(logits / T).
/// T > 1 softens, T < 1 sharpens; argmax is unchanged either way.
struct TemperatureScaler {
  double temperature = 1.0;

  core::ProbVector apply(const std::vector<double>& logits) const {
    return softmax(logits, temperature);
  }
};

struct CalibrationConfig {
  int bins = 15;
  double t_lo = 0.05;
  double t_hi = 20.0;
  int iterations = 60;
};

/// Expected calibration error: equal-width confidence bins, weighted mean
/// of |accuracy - confidence| per bin. Empty bins contribute nothing.
double expected_calibration_error(
    const std::vector<std::vector<double>>& logits,
    const std::vector<core::Label>& labels, double temperature, int bins);

/// Golden-section search for the ECE-minimizing temperature over log T in
/// [t_lo, t_hi]. Never returns a scaler worse than T = 1.
TemperatureScaler calibrate_temperature(
    const std::vector<std::vector<double>>& logits,
    const std::vector<core::Label>& labels,
    const CalibrationConfig& cfg = {});

std::vector<std::vector<double>> collect_logits(const MlpClassifier& net,
                                                const LabeledDataset& data);

TemperatureScaler calibrate_temperature(const MlpClassifier& net,
                                        const LabeledDataset& data,
                                        const CalibrationConfig& cfg = {});

/// Confidence distribution over correctly classified samples: per-bin
/// fractions (summing to 1) and their running total.
struct ConfidenceHistogram {
  std::vector<double> fraction;
  std::vector<double> cumulative;
};

ConfidenceHistogram confidence_histogram(const MlpClassifier& net,
                                         const TemperatureScaler& scaler,
                                         const LabeledDataset& data, int bins);

}  // namespace confgate::model
