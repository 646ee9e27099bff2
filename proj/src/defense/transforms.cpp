#include "confgate/defense/transforms.hpp"

#include <algorithm>
#include <cmath>

#include "confgate/defense/jpeg.hpp"

namespace confgate::defense {

using core::InputVector;
using core::RngStream;
using core::Shape;

std::string to_string(DefenseKind kind) {
  switch (kind) {
    case DefenseKind::kNone: return "none";
    case DefenseKind::kRnd: return "rnd";
    case DefenseKind::kRcr: return "rcr";
    case DefenseKind::kJpeg: return "jpeg";
  }
  throw std::logic_error("to_string: bad DefenseKind");
}

DefenseKind defense_from_string(const std::string& name) {
  if (name == "none") return DefenseKind::kNone;
  if (name == "rnd") return DefenseKind::kRnd;
  if (name == "rcr") return DefenseKind::kRcr;
  if (name == "jpeg") return DefenseKind::kJpeg;
  throw std::invalid_argument("unknown defense kind: " + name);
}

bool defense_randomized(DefenseKind kind) {
  return kind == DefenseKind::kRnd || kind == DefenseKind::kRcr;
}

void DefenseParam::validate(const Shape& input_shape) const {
  switch (kind) {
    case DefenseKind::kNone:
      return;
    case DefenseKind::kRnd:
      if (!(nu >= 0.0)) throw std::invalid_argument("rnd: nu must be >= 0");
      return;
    case DefenseKind::kRcr: {
      if (!input_shape.is_image())
        throw std::invalid_argument("rcr: image shape required");
      if (input_shape.height() != input_shape.width())
        throw std::invalid_argument("rcr: square images required");
      auto crop = static_cast<std::size_t>(nu);
      if (static_cast<double>(crop) != nu || crop < 1 ||
          crop > input_shape.height())
        throw std::invalid_argument("rcr: crop must be an integer in [1, side]");
      return;
    }
    case DefenseKind::kJpeg: {
      int q = static_cast<int>(nu);
      if (static_cast<double>(q) != nu || q < 1 || q > 100)
        throw std::invalid_argument("jpeg: quality must be an integer in [1, 100]");
      if (!input_shape.is_image())
        throw std::invalid_argument("jpeg: image shape required");
      if (input_shape.channels() != 1 && input_shape.channels() != 3)
        throw std::invalid_argument("jpeg: 1 or 3 channels required");
      return;
    }
  }
  throw std::logic_error("DefenseParam: bad kind");
}

InputVector rnd_transform(const InputVector& x, double nu, RngStream& rng) {
  if (!(nu >= 0.0)) throw std::invalid_argument("rnd: nu must be >= 0");
  InputVector out = x;
  for (double& v : out.data) v += nu * rng.normal();
  core::clamp01_inplace(out);
  return out;
}

InputVector rcr_transform_at(const InputVector& x, std::size_t crop,
                             std::size_t off_y, std::size_t off_x) {
  DefenseParam{DefenseKind::kRcr, static_cast<double>(crop)}.validate(x.shape);
  std::size_t c = x.shape.channels();
  std::size_t side = x.shape.height();
  if (off_y > side - crop || off_x > side - crop)
    throw std::invalid_argument("rcr: offset out of range");

  InputVector out = x;
  if (crop == side) return out;  // identity crop

  // corner-aligned mapping from output position to crop-window position
  double ratio = side > 1
                     ? static_cast<double>(crop - 1) / static_cast<double>(side - 1)
                     : 0.0;
  const double* src = x.data.data();
  double* dst = out.data.data();
  for (std::size_t ch = 0; ch < c; ++ch) {
    const double* plane = src + ch * side * side;
    for (std::size_t r = 0; r < side; ++r) {
      double sy = static_cast<double>(off_y) + static_cast<double>(r) * ratio;
      auto y0 = static_cast<std::size_t>(sy);
      std::size_t y1 = std::min(y0 + 1, side - 1);
      double fy = sy - static_cast<double>(y0);
      for (std::size_t cc = 0; cc < side; ++cc) {
        double sx = static_cast<double>(off_x) + static_cast<double>(cc) * ratio;
        auto x0 = static_cast<std::size_t>(sx);
        std::size_t x1 = std::min(x0 + 1, side - 1);
        double fx = sx - static_cast<double>(x0);
        double top = (1.0 - fx) * plane[y0 * side + x0] + fx * plane[y0 * side + x1];
        double bot = (1.0 - fx) * plane[y1 * side + x0] + fx * plane[y1 * side + x1];
        dst[ch * side * side + r * side + cc] = (1.0 - fy) * top + fy * bot;
      }
    }
  }
  core::clamp01_inplace(out);
  return out;
}

InputVector rcr_transform(const InputVector& x, std::size_t crop,
                          RngStream& rng) {
  DefenseParam{DefenseKind::kRcr, static_cast<double>(crop)}.validate(x.shape);
  std::size_t span = x.shape.height() - crop + 1;
  std::size_t off_y = rng.uniform_int(span);
  std::size_t off_x = rng.uniform_int(span);
  return rcr_transform_at(x, crop, off_y, off_x);
}

InputVector apply_defense(const InputVector& x, const DefenseParam& param,
                          RngStream& rng) {
  param.validate(x.shape);
  switch (param.kind) {
    case DefenseKind::kNone:
      return x;
    case DefenseKind::kRnd:
      return rnd_transform(x, param.nu, rng);
    case DefenseKind::kRcr:
      return rcr_transform(x, static_cast<std::size_t>(param.nu), rng);
    case DefenseKind::kJpeg:
      return jpeg_roundtrip(x, static_cast<int>(param.nu));
  }
  throw std::logic_error("apply_defense: bad kind");
}

}  // namespace confgate::defense
