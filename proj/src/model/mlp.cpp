#include "confgate/model/mlp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <numeric>

#include <json.hpp>

namespace confgate::model {

using core::InputVector;
using core::Label;
using core::ProbVector;

LabeledDataset LabeledDataset::slice(std::size_t first, std::size_t last) const {
  LabeledDataset out;
  out.n_classes = n_classes;
  for (std::size_t i = first; i < last && i < size(); ++i)
    out.push_back(xs[i], ys[i]);
  return out;
}

MlpClassifier MlpClassifier::random_init(const std::vector<std::size_t>& sizes,
                                         core::RngStream& rng) {
  if (sizes.size() < 2)
    throw std::invalid_argument("MlpClassifier: need at least in/out sizes");
  MlpClassifier net;
  net.sizes_ = sizes;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    DenseLayer layer;
    layer.in = sizes[l];
    layer.out = sizes[l + 1];
    layer.w.resize(layer.in * layer.out);
    layer.b.assign(layer.out, 0.0);
    double scale = std::sqrt(2.0 / static_cast<double>(layer.in));
    for (double& w : layer.w) w = scale * rng.normal();
    net.layers_.push_back(std::move(layer));
  }
  return net;
}

std::vector<double> MlpClassifier::forward(const InputVector& x) const {
  if (x.size() != input_dim())
    throw std::invalid_argument("MlpClassifier: input dim mismatch");
  std::vector<double> act(x.data);
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const DenseLayer& layer = layers_[l];
    std::vector<double> next(layer.out);
    for (std::size_t o = 0; o < layer.out; ++o) {
      double s = layer.b[o];
      const double* row = &layer.w[o * layer.in];
      for (std::size_t i = 0; i < layer.in; ++i) s += row[i] * act[i];
      next[o] = s;
    }
    if (l + 1 < layers_.size())
      for (double& v : next) v = std::max(0.0, v);
    act = std::move(next);
  }
  return act;
}

std::size_t MlpClassifier::n_params() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += l.w.size() + l.b.size();
  return n;
}

double MlpClassifier::param(std::size_t i) const {
  for (const auto& l : layers_) {
    if (i < l.w.size()) return l.w[i];
    i -= l.w.size();
    if (i < l.b.size()) return l.b[i];
    i -= l.b.size();
  }
  throw std::out_of_range("MlpClassifier::param");
}

void MlpClassifier::set_param(std::size_t i, double v) {
  for (auto& l : layers_) {
    if (i < l.w.size()) {
      l.w[i] = v;
      return;
    }
    i -= l.w.size();
    if (i < l.b.size()) {
      l.b[i] = v;
      return;
    }
    i -= l.b.size();
  }
  throw std::out_of_range("MlpClassifier::set_param");
}

void MlpClassifier::add_scaled(const std::vector<double>& grad, double scale) {
  std::size_t i = 0;
  for (auto& l : layers_) {
    for (double& w : l.w) w += scale * grad[i++];
    for (double& b : l.b) b += scale * grad[i++];
  }
}

ProbVector softmax(const std::vector<double>& logits, double temperature) {
  if (logits.empty()) throw std::invalid_argument("softmax: empty logits");
  if (!(temperature > 0)) throw std::invalid_argument("softmax: T must be > 0");
  double m = *std::max_element(logits.begin(), logits.end());
  std::vector<double> p(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp((logits[i] - m) / temperature);
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return ProbVector(std::move(p));
}

double cross_entropy(const ProbVector& probs, Label y) {
  if (y.value < 0 || static_cast<std::size_t>(y.value) >= probs.size())
    throw std::out_of_range("cross_entropy: label out of range");
  return -std::log(std::max(probs[static_cast<std::size_t>(y.value)], 1e-300));
}

double ce_loss(const MlpClassifier& net, const LabeledDataset& data,
               const std::vector<std::size_t>& idx, std::vector<double>* grad) {
  if (idx.empty()) throw std::invalid_argument("ce_loss: empty batch");
  const auto& layers = net.layers();
  if (grad) grad->assign(net.n_params(), 0.0);

  double loss = 0.0;
  for (std::size_t sample : idx) {
    const InputVector& x = data.xs[sample];
    // forward pass keeping every activation for the backward sweep
    std::vector<std::vector<double>> acts;
    acts.push_back(x.data);
    for (std::size_t l = 0; l < layers.size(); ++l) {
      const DenseLayer& layer = layers[l];
      std::vector<double> next(layer.out);
      for (std::size_t o = 0; o < layer.out; ++o) {
        double s = layer.b[o];
        const double* row = &layer.w[o * layer.in];
        for (std::size_t i = 0; i < layer.in; ++i) s += row[i] * acts.back()[i];
        next[o] = s;
      }
      if (l + 1 < layers.size())
        for (double& v : next) v = std::max(0.0, v);
      acts.push_back(std::move(next));
    }
    ProbVector probs = softmax(acts.back());
    loss += cross_entropy(probs, data.ys[sample]);
    if (!grad) continue;

    // delta at the logits: softmax - onehot
    std::vector<double> delta(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i) delta[i] = probs[i];
    delta[static_cast<std::size_t>(data.ys[sample].value)] -= 1.0;

    std::size_t offset = net.n_params();
    for (std::size_t l = layers.size(); l-- > 0;) {
      const DenseLayer& layer = layers[l];
      offset -= layer.w.size() + layer.b.size();
      const std::vector<double>& in_act = acts[l];
      for (std::size_t o = 0; o < layer.out; ++o) {
        (*grad)[offset + layer.w.size() + o] += delta[o];
        for (std::size_t i = 0; i < layer.in; ++i)
          (*grad)[offset + o * layer.in + i] += delta[o] * in_act[i];
      }
      if (l == 0) break;
      std::vector<double> prev(layer.in, 0.0);
      for (std::size_t i = 0; i < layer.in; ++i) {
        if (in_act[i] <= 0.0) continue;  // relu gate
        double s = 0.0;
        for (std::size_t o = 0; o < layer.out; ++o)
          s += layer.w[o * layer.in + i] * delta[o];
        prev[i] = s;
      }
      delta = std::move(prev);
    }
  }

  double inv = 1.0 / static_cast<double>(idx.size());
  if (grad)
    for (double& g : *grad) g *= inv;
  return loss * inv;
}

TrainReport train_sgd(MlpClassifier& net, const LabeledDataset& data,
                      const TrainConfig& cfg, core::RngStream& rng) {
  if (data.size() == 0) throw std::invalid_argument("train_sgd: empty dataset");
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);

  TrainReport report;
  report.initial_loss = ce_loss(net, data, order);

  std::vector<double> grad;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    // Fisher-Yates from our own stream so runs replay exactly
    for (std::size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[rng.uniform_int(i)]);
    for (std::size_t start = 0; start < order.size();
         start += static_cast<std::size_t>(cfg.batch)) {
      std::size_t stop = std::min(order.size(),
                                  start + static_cast<std::size_t>(cfg.batch));
      std::vector<std::size_t> batch(order.begin() + start, order.begin() + stop);
      ce_loss(net, data, batch, &grad);
      net.add_scaled(grad, -cfg.lr);
    }
  }

  std::iota(order.begin(), order.end(), 0);
  report.final_loss = ce_loss(net, data, order);
  return report;
}

double accuracy(const MlpClassifier& net, const LabeledDataset& data) {
  if (data.size() == 0) throw std::invalid_argument("accuracy: empty dataset");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto logits = net.forward(data.xs[i]);
    auto it = std::max_element(logits.begin(), logits.end());
    if (static_cast<int>(it - logits.begin()) == data.ys[i].value) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(data.size());
}

static_assert(std::endian::native == std::endian::little,
              "checkpoint blobs are little-endian f32");

void save_checkpoint(const std::filesystem::path& json_path,
                     const MlpClassifier& net, double temperature) {
  std::filesystem::path bin_path = json_path;
  bin_path.replace_extension(".bin");

  nlohmann::json header;
  header["version"] = 1;
  header["layer_sizes"] = net.sizes();
  header["n_params"] = net.n_params();
  header["temperature"] = temperature;
  header["weights_file"] = bin_path.filename().string();
  std::ofstream js(json_path);
  js << header.dump(2) << "\n";
  if (!js) throw std::runtime_error("save_checkpoint: header write failed");

  std::ofstream out(bin_path, std::ios::binary);
  std::vector<float> flat(net.n_params());
  for (std::size_t i = 0; i < flat.size(); ++i)
    flat[i] = static_cast<float>(net.param(i));
  out.write(reinterpret_cast<const char*>(flat.data()),
            static_cast<std::streamsize>(flat.size() * sizeof(float)));
  if (!out) throw std::runtime_error("save_checkpoint: blob write failed");
}

std::pair<MlpClassifier, double> load_checkpoint(
    const std::filesystem::path& json_path) {
  std::ifstream js(json_path);
  if (!js)
    throw std::runtime_error("load_checkpoint: cannot open " + json_path.string());
  nlohmann::json header = nlohmann::json::parse(js);
  if (header.at("version").get<int>() != 1)
    throw std::runtime_error("load_checkpoint: unsupported version");

  auto sizes = header.at("layer_sizes").get<std::vector<std::size_t>>();
  core::RngStream dummy(0);
  MlpClassifier net = MlpClassifier::random_init(sizes, dummy);

  std::filesystem::path bin_path =
      json_path.parent_path() / header.at("weights_file").get<std::string>();
  std::ifstream in(bin_path, std::ios::binary);
  if (!in)
    throw std::runtime_error("load_checkpoint: cannot open " + bin_path.string());
  std::vector<float> flat(header.at("n_params").get<std::size_t>());
  if (flat.size() != net.n_params())
    throw std::runtime_error("load_checkpoint: parameter count mismatch");
  in.read(reinterpret_cast<char*>(flat.data()),
          static_cast<std::streamsize>(flat.size() * sizeof(float)));
  if (!in) throw std::runtime_error("load_checkpoint: truncated blob");
  for (std::size_t i = 0; i < flat.size(); ++i)
    net.set_param(i, static_cast<double>(flat[i]));
  return {std::move(net), header.at("temperature").get<double>()};
}

}  // namespace confgate::model
