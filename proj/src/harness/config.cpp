#include "confgate/harness/config.hpp"

#include <bit>
#include <set>
#include <sstream>

#include "confgate/core/rng.hpp"

namespace confgate::harness {

void ExperimentConfig::validate() const {
  if (version != kConfigVersion)
    throw std::invalid_argument("unsupported config version " +
                                std::to_string(version) + ", expected " +
                                std::to_string(kConfigVersion));
  if (nus.empty()) throw std::invalid_argument("defense grid is empty");
  if (taus.empty()) throw std::invalid_argument("threshold grid is empty");
  for (double tau : taus)
    if (!(tau >= 0.0 && tau <= 1.0))
      throw std::invalid_argument("threshold grid entries must lie in [0, 1]");
  if (n_attack < 1) throw std::invalid_argument("n_attack must be >= 1");
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (dataset.kind == DatasetSpec::Kind::kBlobs) {
    if (dataset.n_classes < 2)
      throw std::invalid_argument("blobs need at least 2 classes");
    if (dataset.dim < 2)
      throw std::invalid_argument("blobs need dimension >= 2");
    if (!(dataset.spread > 0.0))
      throw std::invalid_argument("blob spread must be > 0");
    if (dataset.per_class < 5)
      throw std::invalid_argument("blobs need at least 5 samples per class");
  } else if (dataset.tensor_dir.empty()) {
    throw std::invalid_argument("tensor dataset needs dataset.dir");
  }
  if (model.checkpoint.empty()) {
    if (model.hidden.empty())
      throw std::invalid_argument("model needs at least one hidden layer");
    if (model.epochs < 1) throw std::invalid_argument("epochs must be >= 1");
    if (!(model.lr > 0.0))
      throw std::invalid_argument("learning rate must be > 0");
    if (model.batch < 1) throw std::invalid_argument("batch must be >= 1");
  }
  if (!epsilon_auto && !(attack.epsilon > 0.0))
    throw std::invalid_argument("distortion bound must be > 0");
  // Remaining attack knobs are validated where the attack runs; epsilon may
  // still be the auto placeholder here.
  attack.bisect.validate();
}

namespace {

// A misplaced key silently falling back to its default would be a painful
// way to lose an experiment, so reject anything unrecognized.
void reject_unknown_keys(const TomlDocument& doc) {
  static const std::set<std::string> known{
      "version",       "seed",
      "out_dir",       "workers",
      "dataset.kind",  "dataset.classes",
      "dataset.dim",   "dataset.per_class",
      "dataset.spread", "dataset.dir",
      "model.hidden",  "model.epochs",
      "model.lr",      "model.batch",
      "model.checkpoint", "attack.kind",
      "attack.budget", "attack.epsilon",
      "attack.init_cap", "attack.b0",
      "attack.max_rounds", "attack.theta_max",
      "attack.bisect_tolerance", "attack.bisect_max_steps",
      "attack.bisect_repeats", "attack.bisect_confidence_z",
      "defense.kind",  "defense.nus",
      "gate.taus",     "eval.n_attack"};
  for (const auto& [key, value] : doc.entries())
    if (!known.count(key))
      throw std::invalid_argument("unknown config key: " + key);
}

}  // namespace

ExperimentConfig config_from_toml(const TomlDocument& doc) {
  reject_unknown_keys(doc);
  ExperimentConfig cfg;
  cfg.version = static_cast<int>(doc.get_int("version", kConfigVersion));
  cfg.master_seed =
      static_cast<std::uint64_t>(doc.get_int("seed", 1));
  cfg.out_dir = doc.get_string("out_dir", "out");

  std::string ds = doc.get_string("dataset.kind", "blobs");
  if (ds == "blobs")
    cfg.dataset.kind = DatasetSpec::Kind::kBlobs;
  else if (ds == "tensors")
    cfg.dataset.kind = DatasetSpec::Kind::kTensors;
  else
    throw std::invalid_argument("unknown dataset kind: " + ds);
  cfg.dataset.n_classes = static_cast<std::size_t>(
      doc.get_int("dataset.classes", static_cast<std::int64_t>(cfg.dataset.n_classes)));
  cfg.dataset.dim = static_cast<std::size_t>(
      doc.get_int("dataset.dim", static_cast<std::int64_t>(cfg.dataset.dim)));
  cfg.dataset.per_class = static_cast<std::size_t>(doc.get_int(
      "dataset.per_class", static_cast<std::int64_t>(cfg.dataset.per_class)));
  cfg.dataset.spread = doc.get_float("dataset.spread", cfg.dataset.spread);
  cfg.dataset.tensor_dir = doc.get_string("dataset.dir", "");

  if (doc.contains("model.hidden")) {
    cfg.model.hidden.clear();
    for (const TomlValue& v : doc.at("model.hidden").as_array())
      cfg.model.hidden.push_back(static_cast<std::size_t>(v.as_int()));
  }
  cfg.model.epochs =
      static_cast<int>(doc.get_int("model.epochs", cfg.model.epochs));
  cfg.model.lr = doc.get_float("model.lr", cfg.model.lr);
  cfg.model.batch =
      static_cast<int>(doc.get_int("model.batch", cfg.model.batch));
  cfg.model.checkpoint = doc.get_string("model.checkpoint", "");

  cfg.attack.kind =
      attack::attack_from_string(doc.get_string("attack.kind", "hsja"));
  cfg.attack.budget = static_cast<std::size_t>(
      doc.get_int("attack.budget", static_cast<std::int64_t>(cfg.attack.budget)));
  if (doc.contains("attack.epsilon")) {
    cfg.attack.epsilon = doc.at("attack.epsilon").as_float();
    cfg.epsilon_auto = false;
  }
  cfg.attack.init_cap = static_cast<std::size_t>(doc.get_int(
      "attack.init_cap", static_cast<std::int64_t>(cfg.attack.init_cap)));
  cfg.attack.b0 = static_cast<std::size_t>(
      doc.get_int("attack.b0", static_cast<std::int64_t>(cfg.attack.b0)));
  cfg.attack.max_rounds = static_cast<std::size_t>(doc.get_int(
      "attack.max_rounds", static_cast<std::int64_t>(cfg.attack.max_rounds)));
  cfg.attack.theta_max =
      doc.get_float("attack.theta_max", cfg.attack.theta_max);
  cfg.attack.bisect.tolerance =
      doc.get_float("attack.bisect_tolerance", cfg.attack.bisect.tolerance);
  cfg.attack.bisect.max_steps = static_cast<std::size_t>(
      doc.get_int("attack.bisect_max_steps",
                  static_cast<std::int64_t>(cfg.attack.bisect.max_steps)));
  cfg.attack.bisect.m_repeats = static_cast<std::size_t>(
      doc.get_int("attack.bisect_repeats",
                  static_cast<std::int64_t>(cfg.attack.bisect.m_repeats)));
  cfg.attack.bisect.confidence_z = doc.get_float(
      "attack.bisect_confidence_z", cfg.attack.bisect.confidence_z);

  cfg.defense_kind =
      defense::defense_from_string(doc.get_string("defense.kind", "rnd"));
  if (doc.contains("defense.nus")) cfg.nus = doc.get_float_array("defense.nus");
  if (doc.contains("gate.taus")) cfg.taus = doc.get_float_array("gate.taus");

  cfg.n_attack = static_cast<std::size_t>(
      doc.get_int("eval.n_attack", static_cast<std::int64_t>(cfg.n_attack)));
  cfg.workers = static_cast<std::size_t>(
      doc.get_int("workers", static_cast<std::int64_t>(cfg.workers)));

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  return config_from_toml(parse_toml_file(path));
}

namespace {

void mix(std::uint64_t& h, std::uint64_t v) { h = core::mix_seed(h, v); }
void mix(std::uint64_t& h, double v) {
  mix(h, std::bit_cast<std::uint64_t>(v));
}
void mix(std::uint64_t& h, const std::string& s) {
  mix(h, s.size());
  for (char c : s) mix(h, static_cast<std::uint64_t>(static_cast<unsigned char>(c)));
}

}  // namespace

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  std::uint64_t h = 0x636f6e6667617465ULL;
  mix(h, static_cast<std::uint64_t>(cfg.version));
  mix(h, cfg.master_seed);
  mix(h, static_cast<std::uint64_t>(cfg.dataset.kind));
  mix(h, cfg.dataset.n_classes);
  mix(h, cfg.dataset.dim);
  mix(h, cfg.dataset.per_class);
  mix(h, cfg.dataset.spread);
  mix(h, cfg.dataset.tensor_dir);
  for (std::size_t w : cfg.model.hidden) mix(h, w);
  mix(h, static_cast<std::uint64_t>(cfg.model.epochs));
  mix(h, cfg.model.lr);
  mix(h, static_cast<std::uint64_t>(cfg.model.batch));
  mix(h, cfg.model.checkpoint);
  mix(h, to_string(cfg.attack.kind));
  mix(h, cfg.attack.budget);
  mix(h, cfg.attack.epsilon);
  mix(h, static_cast<std::uint64_t>(cfg.epsilon_auto));
  mix(h, cfg.attack.init_cap);
  mix(h, cfg.attack.b0);
  mix(h, cfg.attack.max_rounds);
  mix(h, cfg.attack.theta_max);
  mix(h, cfg.attack.bisect.tolerance);
  mix(h, cfg.attack.bisect.max_steps);
  mix(h, cfg.attack.bisect.m_repeats);
  mix(h, cfg.attack.bisect.confidence_z);
  mix(h, to_string(cfg.defense_kind));
  for (double nu : cfg.nus) mix(h, nu);
  for (double tau : cfg.taus) mix(h, tau);
  mix(h, cfg.n_attack);
  return h;
}

}  // namespace confgate::harness
