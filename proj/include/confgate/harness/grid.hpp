#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "confgate/eval/metrics.hpp"
#include "confgate/harness/blobs.hpp"
#include "confgate/harness/config.hpp"
#include "confgate/model/calibrate.hpp"
#include "confgate/model/mlp.hpp"

namespace confgate::harness {

// Seed for one (attack, defense, nu, tau) cell, chained off the master seed
// so adding or removing grid cells never changes another cell's stream.
std::uint64_t cell_seed(std::uint64_t master_seed, attack::AttackKind attack,
                        defense::DefenseKind defense, double nu, double tau);

// One line per ExperimentPoint under the fixed header
// attack,defense,nu,tau,ca,ra,asr,n,mean_queries,seed. Numbers use the
// shortest exact decimal form so rendering is byte-reproducible.
std::string results_csv(const std::vector<eval::ExperimentPoint>& points);
std::vector<eval::ExperimentPoint> read_results_csv(std::istream& in);
std::vector<eval::ExperimentPoint> read_results_csv_file(
    const std::filesystem::path& path);

// Frontier document {"points": [...], "frontier": [indices]} over the given
// cells, frontier indices in CA-descending order.
std::string frontier_json(const std::vector<eval::ExperimentPoint>& points);

struct GridResult {
  std::vector<eval::ExperimentPoint> points;  // successful cells, cell order
  std::vector<std::string> failures;          // one message per failed cell
  std::filesystem::path csv_path;
  std::filesystem::path frontier_path;
  std::filesystem::path manifest_path;
  double undefended_ca = 0.0;
  double epsilon = 0.0;  // distortion bound actually used
};

// Full protocol for one config: materialize data, train (or load) and
// calibrate the model, then for every (nu, tau) cell measure clean accuracy
// on the test split and robust accuracy by attacking n correctly classified
// test samples. Cells run on a worker pool but results are written in cell
// order, so output bytes do not depend on the worker count. A failing cell
// is recorded in the manifest and skipped; the grid keeps going.
GridResult run_grid(const ExperimentConfig& cfg,
                    const std::filesystem::path& out_dir);

// The pieces run_grid builds once, exposed for the single-cell subcommand.
struct PreparedExperiment {
  DataSplits splits;
  model::MlpClassifier net;
  model::TemperatureScaler scaler;
  double undefended_ca = 0.0;
  double epsilon = 0.0;
  std::vector<std::size_t> attack_indices;  // into splits.test
};

// Trains per the model spec (stream derived from the master seed) and
// calibrates the temperature on the validation split. Shared between the
// grid runner and the train subcommand so a saved checkpoint reproduces the
// model a checkpoint-free grid run would train.
std::pair<model::MlpClassifier, model::TemperatureScaler> train_model(
    const ExperimentConfig& cfg, const DataSplits& splits);

PreparedExperiment prepare_experiment(const ExperimentConfig& cfg);

// Attack one cell and measure it. attack_rng/eval_rng forks come from the
// cell seed; traces_out, when non-null, receives the per-sample JSONL text.
eval::ExperimentPoint run_cell(const ExperimentConfig& cfg,
                               const PreparedExperiment& prep, double nu,
                               double tau, std::string* traces_out);

}  // namespace confgate::harness
