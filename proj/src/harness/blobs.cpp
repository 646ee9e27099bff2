#include "confgate/harness/blobs.hpp"

#include <algorithm>
#include <fstream>

#include "json.hpp"

#include "confgate/core/io.hpp"

namespace confgate::harness {

using core::InputVector;
using core::RngStream;
using core::Shape;
using model::LabeledDataset;

namespace {

// Stream salts: every consumer of the master seed gets its own lane.
constexpr std::uint64_t kDataLane = 0xDA7A;
constexpr std::uint64_t kSplitLane = 0x59117;

}  // namespace

std::vector<double> blob_mean(std::size_t cls, std::size_t dim) {
  if (cls >= 2 * dim)
    throw std::invalid_argument("blob classes are limited to 2 * dim");
  std::vector<double> mean(dim, 0.5);
  mean[cls % dim] += cls < dim ? 0.25 : -0.25;
  return mean;
}

LabeledDataset generate_blobs(std::size_t n_classes, std::size_t dim,
                              std::size_t per_class, double spread,
                              RngStream& rng) {
  if (n_classes < 2) throw std::invalid_argument("need at least 2 classes");
  if (dim < 2) throw std::invalid_argument("need dimension >= 2");
  if (!(spread > 0.0))
    throw std::invalid_argument("degenerate spread, must be > 0");
  if (n_classes > 2 * dim)
    throw std::invalid_argument("blob classes are limited to 2 * dim");

  LabeledDataset data;
  data.n_classes = static_cast<int>(n_classes);
  Shape shape(dim);
  for (std::size_t cls = 0; cls < n_classes; ++cls) {
    std::vector<double> mean = blob_mean(cls, dim);
    for (std::size_t s = 0; s < per_class; ++s) {
      std::vector<double> x(dim);
      for (std::size_t i = 0; i < dim; ++i)
        x[i] = mean[i] + spread * rng.normal();
      InputVector sample(shape, std::move(x));
      core::clamp01_inplace(sample);
      data.push_back(std::move(sample),
                     core::Label(static_cast<int>(cls), data.n_classes));
    }
  }
  return data;
}

DataSplits split_dataset(const LabeledDataset& data, RngStream& rng) {
  std::size_t n = data.size();
  if (n < 5)
    throw std::invalid_argument("dataset too small to split");
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = n - 1; i > 0; --i) {
    std::size_t j = rng.uniform_int(i + 1);
    std::swap(order[i], order[j]);
  }

  std::size_t n_train = (n * 6) / 10;
  std::size_t n_val = (n * 2) / 10;
  DataSplits splits;
  splits.train.n_classes = data.n_classes;
  splits.val.n_classes = data.n_classes;
  splits.test.n_classes = data.n_classes;
  for (std::size_t i = 0; i < n; ++i) {
    LabeledDataset& dst = i < n_train            ? splits.train
                          : i < n_train + n_val ? splits.val
                                                : splits.test;
    dst.push_back(data.xs[order[i]], data.ys[order[i]]);
  }
  return splits;
}

double default_epsilon(const LabeledDataset& data) {
  if (data.size() == 0 || data.n_classes < 2)
    throw std::invalid_argument("need a labeled dataset to scale epsilon");
  std::size_t dim = data.xs.front().size();
  std::vector<std::vector<double>> sums(data.n_classes,
                                        std::vector<double>(dim, 0.0));
  std::vector<std::size_t> counts(data.n_classes, 0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto cls = static_cast<std::size_t>(data.ys[i].value);
    ++counts[cls];
    for (std::size_t k = 0; k < dim; ++k) sums[cls][k] += data.xs[i][k];
  }

  std::vector<double> gaps;
  for (std::size_t a = 0; a < sums.size(); ++a) {
    if (counts[a] == 0) continue;
    for (std::size_t b = a + 1; b < sums.size(); ++b) {
      if (counts[b] == 0) continue;
      double sq = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        double d = sums[a][k] / static_cast<double>(counts[a]) -
                   sums[b][k] / static_cast<double>(counts[b]);
        sq += d * d;
      }
      gaps.push_back(std::sqrt(sq));
    }
  }
  if (gaps.empty())
    throw std::invalid_argument("need two populated classes to scale epsilon");
  std::sort(gaps.begin(), gaps.end());
  std::size_t mid = gaps.size() / 2;
  double median = gaps.size() % 2 ? gaps[mid]
                                  : 0.5 * (gaps[mid - 1] + gaps[mid]);
  return 0.5 * median;
}

namespace {

void save_labels(const std::filesystem::path& path, const LabeledDataset& d) {
  nlohmann::json j;
  j["n_classes"] = d.n_classes;
  std::vector<int> labels;
  labels.reserve(d.size());
  for (core::Label y : d.ys) labels.push_back(y.value);
  j["labels"] = labels;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

void load_labels(const std::filesystem::path& path, LabeledDataset& d) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  nlohmann::json j = nlohmann::json::parse(in);
  d.n_classes = j.at("n_classes").get<int>();
  for (int v : j.at("labels").get<std::vector<int>>())
    d.ys.push_back(core::Label(v, d.n_classes));
  if (d.ys.size() != d.xs.size())
    throw std::runtime_error("label count does not match batch in " +
                             path.string());
}

}  // namespace

void save_splits(const DataSplits& splits, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::pair<const char*, const LabeledDataset*> parts[] = {
      {"train", &splits.train}, {"val", &splits.val}, {"test", &splits.test}};
  for (auto [name, part] : parts) {
    core::save_batch(dir / (std::string(name) + ".bin"), part->xs);
    save_labels(dir / (std::string(name) + ".labels.json"), *part);
  }
}

DataSplits load_splits(const std::filesystem::path& dir) {
  DataSplits splits;
  const std::pair<const char*, LabeledDataset*> parts[] = {
      {"train", &splits.train}, {"val", &splits.val}, {"test", &splits.test}};
  for (auto [name, part] : parts) {
    part->xs = core::load_batch(dir / (std::string(name) + ".bin"));
    load_labels(dir / (std::string(name) + ".labels.json"), *part);
  }
  return splits;
}

DataSplits load_or_generate(const ExperimentConfig& cfg) {
  if (cfg.dataset.kind == DatasetSpec::Kind::kTensors)
    return load_splits(cfg.dataset.tensor_dir);
  RngStream gen_rng(cfg.master_seed, kDataLane);
  LabeledDataset data =
      generate_blobs(cfg.dataset.n_classes, cfg.dataset.dim,
                     cfg.dataset.per_class, cfg.dataset.spread, gen_rng);
  RngStream split_rng(cfg.master_seed, kSplitLane);
  return split_dataset(data, split_rng);
}

}  // namespace confgate::harness
