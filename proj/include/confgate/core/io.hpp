#pragma once

#include <filesystem>
#include <vector>

#include "confgate/core/types.hpp"

namespace confgate::core {

/// On-disk tensor batch: flat little-endian f32 samples in one .bin file,
/// plus a JSON sidecar {shape, count, dtype: "f32", layout: "chw"} next to
/// it (same path with extension replaced by .json).
void save_batch(const std::filesystem::path& bin_path,
                const std::vector<InputVector>& batch);

std::vector<InputVector> load_batch(const std::filesystem::path& bin_path);

std::filesystem::path sidecar_path(const std::filesystem::path& bin_path);

}  // namespace confgate::core
