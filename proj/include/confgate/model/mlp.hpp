#pragma once

#include <filesystem>
#include <vector>

#include "confgate/core/rng.hpp"
#include "confgate/core/types.hpp"
#include "confgate/model/dataset.hpp"

namespace confgate::model {

struct DenseLayer {
  std::size_t in = 0;
  std::size_t out = 0;
  std::vector<double> w;  // out x in, row-major
  std::vector<double> b;  // out
};

/// Fully connected net with relu hidden activations. forward() returns
/// raw logits; pair with softmax() for probabilities.
class MlpClassifier {
 public:
  MlpClassifier() = default;

  /// He-scaled gaussian weights, zero biases. sizes = {in, hidden..., out}.
  static MlpClassifier random_init(const std::vector<std::size_t>& sizes,
                                   core::RngStream& rng);

  std::size_t input_dim() const { return sizes_.front(); }
  int n_classes() const { return static_cast<int>(sizes_.back()); }
  const std::vector<std::size_t>& sizes() const { return sizes_; }

  std::vector<double> forward(const core::InputVector& x) const;

  // Flat parameter view (layer order, weights then bias) used by the
  // optimizer and by finite-difference checks.
  std::size_t n_params() const;
  double param(std::size_t i) const;
  void set_param(std::size_t i, double v);
  void add_scaled(const std::vector<double>& grad, double scale);

  std::vector<DenseLayer>& layers() { return layers_; }
  const std::vector<DenseLayer>& layers() const { return layers_; }

 private:
  std::vector<std::size_t> sizes_;
  std::vector<DenseLayer> layers_;
};

/// Temperature-scaled softmax; numerically stable under large logits.
core::ProbVector softmax(const std::vector<double>& logits,
                         double temperature = 1.0);

/// -log p[y] with a floor to keep the value finite.
double cross_entropy(const core::ProbVector& probs, core::Label y);

/// Mean cross-entropy over the index subset and, when grad is non-null,
/// its gradient in flat parameter order.
double ce_loss(const MlpClassifier& net, const LabeledDataset& data,
               const std::vector<std::size_t>& idx,
               std::vector<double>* grad = nullptr);

struct TrainConfig {
  int epochs = 40;
  double lr = 0.1;
  int batch = 32;
};

struct TrainReport {
  double initial_loss = 0.0;
  double final_loss = 0.0;
};

/// Plain minibatch SGD with per-epoch reshuffling.
TrainReport train_sgd(MlpClassifier& net, const LabeledDataset& data,
                      const TrainConfig& cfg, core::RngStream& rng);

double accuracy(const MlpClassifier& net, const LabeledDataset& data);

/// Checkpoint: versioned JSON header next to a flat little-endian f32
/// weight blob (same stem, .bin extension).
void save_checkpoint(const std::filesystem::path& json_path,
                     const MlpClassifier& net, double temperature);
std::pair<MlpClassifier, double> load_checkpoint(
    const std::filesystem::path& json_path);

}  // namespace confgate::model
