#pragma once

#include <string>

#include "confgate/core/rng.hpp"
#include "confgate/core/types.hpp"

namespace confgate::defense {

enum class DefenseKind { kNone, kRnd, kRcr, kJpeg };

std::string to_string(DefenseKind kind);
DefenseKind defense_from_string(const std::string& name);

/// One input-transformation defense. The meaning of `nu` depends on the
/// kind: gaussian noise scale for rnd, crop side length for rcr, encoder
/// quality (1..100) for jpeg, unused for none.
struct DefenseParam {
  DefenseKind kind = DefenseKind::kNone;
  double nu = 0.0;

  void validate(const core::Shape& input_shape) const;
};

/// Does the transform consume randomness per call?
bool defense_randomized(DefenseKind kind);

/// x + nu * r with r ~ N(0, I), clamped back into [0,1].
core::InputVector rnd_transform(const core::InputVector& x, double nu,
                                core::RngStream& rng);

/// Crop a crop x crop window at the given offset and resize back to the
/// full side length with corner-aligned bilinear interpolation
/// (source = dest * (crop-1) / (side-1)). Square images only.
core::InputVector rcr_transform_at(const core::InputVector& x,
                                   std::size_t crop, std::size_t off_y,
                                   std::size_t off_x);

/// rcr_transform_at with the offset drawn uniformly from
/// {0..side-crop}^2 (row drawn first, then column).
core::InputVector rcr_transform(const core::InputVector& x, std::size_t crop,
                                core::RngStream& rng);

/// Dispatch on kind; none is the identity.
core::InputVector apply_defense(const core::InputVector& x,
                                const DefenseParam& param,
                                core::RngStream& rng);

}  // namespace confgate::defense
