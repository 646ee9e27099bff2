#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "confgate/attack/types.hpp"
#include "confgate/defense/transforms.hpp"
#include "confgate/harness/toml.hpp"

namespace confgate::harness {

inline constexpr int kConfigVersion = 1;
inline constexpr const char* kToolVersion = "confgate 1.0.0";

struct DatasetSpec {
  enum class Kind { kBlobs, kTensors };
  Kind kind = Kind::kBlobs;

  // synthetic blobs
  std::size_t n_classes = 2;
  std::size_t dim = 8;
  std::size_t per_class = 300;
  double spread = 0.08;

  // pre-generated tensors
  std::string tensor_dir;
};

struct ModelSpec {
  std::vector<std::size_t> hidden = {32};
  int epochs = 40;
  double lr = 0.05;
  int batch = 32;
  std::string checkpoint;  // when set, load this instead of training
};

// Everything a grid run needs; (config, master seed) determines every
// output byte.
struct ExperimentConfig {
  int version = kConfigVersion;
  std::uint64_t master_seed = 1;
  std::string out_dir = "out";

  DatasetSpec dataset;
  ModelSpec model;

  attack::AttackConfig attack;
  bool epsilon_auto = true;  // scale the distortion bound from the data

  defense::DefenseKind defense_kind = defense::DefenseKind::kRnd;
  std::vector<double> nus = {0.05};
  std::vector<double> taus = {0.0, 0.5, 0.8, 1.0};

  std::size_t n_attack = 50;
  std::size_t workers = 1;

  void validate() const;
};

ExperimentConfig config_from_toml(const TomlDocument& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

// Stable hash over every field that influences outputs, for the manifest.
std::uint64_t config_hash(const ExperimentConfig& cfg);

}  // namespace confgate::harness
