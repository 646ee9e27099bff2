#pragma once

#include "confgate/core/rng.hpp"
#include "confgate/harness/config.hpp"
#include "confgate/model/dataset.hpp"

namespace confgate::harness {

// Class mean for blob generation: 0.5 everywhere except one coordinate
// pushed to 0.75 (classes 0..d-1) or 0.25 (classes d..2d-1). Supports at
// most 2d classes so every pair of means stays distinct.
std::vector<double> blob_mean(std::size_t cls, std::size_t dim);

// Isotropic Gaussian clusters around the blob means, clamped to [0,1]^d.
model::LabeledDataset generate_blobs(std::size_t n_classes, std::size_t dim,
                                     std::size_t per_class, double spread,
                                     core::RngStream& rng);

struct DataSplits {
  model::LabeledDataset train;
  model::LabeledDataset val;
  model::LabeledDataset test;
};

// Shuffled 60/20/20 partition.
DataSplits split_dataset(const model::LabeledDataset& data,
                         core::RngStream& rng);

// Default distortion bound: half the median distance between class means
// (means estimated from the data).
double default_epsilon(const model::LabeledDataset& data);

// Materializes the configured dataset: synthetic blobs from the master
// seed, or tensors loaded from dataset.dir (expects train/val/test batches
// plus JSON label files, as written by the data generation subcommand).
DataSplits load_or_generate(const ExperimentConfig& cfg);

// Persistence for generated datasets (one batch + label file per split).
void save_splits(const DataSplits& splits, const std::filesystem::path& dir);
DataSplits load_splits(const std::filesystem::path& dir);

}  // namespace confgate::harness
