#include "confgate/defense/jpeg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace confgate::defense {

using core::InputVector;

namespace {

// Annex K reference tables (luminance, chrominance), row-major.
constexpr std::array<int, 64> kBaseLuma = {
    16, 11, 10, 16, 24,  40,  51,  61,   //
    12, 12, 14, 19, 26,  58,  60,  55,   //
    14, 13, 16, 24, 40,  57,  69,  56,   //
    14, 17, 22, 29, 51,  87,  80,  62,   //
    18, 22, 37, 56, 68,  109, 103, 77,   //
    24, 35, 55, 64, 81,  104, 113, 92,   //
    49, 64, 78, 87, 103, 121, 120, 101,  //
    72, 92, 95, 98, 112, 100, 103, 99,
};

constexpr std::array<int, 64> kBaseChroma = {
    17, 18, 24, 47, 99, 99, 99, 99,  //
    18, 21, 26, 66, 99, 99, 99, 99,  //
    24, 26, 56, 99, 99, 99, 99, 99,  //
    47, 66, 99, 99, 99, 99, 99, 99,  //
    99, 99, 99, 99, 99, 99, 99, 99,  //
    99, 99, 99, 99, 99, 99, 99, 99,  //
    99, 99, 99, 99, 99, 99, 99, 99,  //
    99, 99, 99, 99, 99, 99, 99, 99,
};

std::array<int, 64> scale_table(const std::array<int, 64>& base, int scale) {
  std::array<int, 64> out{};
  for (std::size_t i = 0; i < 64; ++i) {
    int v = (base[i] * scale + 50) / 100;
    out[i] = std::clamp(v, 1, 255);
  }
  return out;
}

// Orthonormal DCT-II basis: M[u][x] = c_u / 2 * cos((2x + 1) u pi / 16),
// c_0 = 1/sqrt(2), c_u = 1 otherwise. Rows are basis vectors.
struct DctBasis {
  double m[8][8];
  DctBasis() {
    for (int u = 0; u < 8; ++u) {
      double cu = u == 0 ? 1.0 / std::sqrt(2.0) : 1.0;
      for (int x = 0; x < 8; ++x)
        m[u][x] = 0.5 * cu *
                  std::cos((2.0 * x + 1.0) * u * std::numbers::pi / 16.0);
    }
  }
};

const DctBasis& basis() {
  static const DctBasis b;
  return b;
}

// One image plane in [0, 255] integer samples with helpers for the blocked
// transform. Blocks that extend past the edge replicate the border sample.
class Plane {
 public:
  Plane(std::size_t h, std::size_t w) : h_(h), w_(w), data_(h * w) {}

  int& at(std::size_t r, std::size_t c) { return data_[r * w_ + c]; }
  int at(std::size_t r, std::size_t c) const { return data_[r * w_ + c]; }

  int clamped(std::size_t r, std::size_t c) const {
    return at(std::min(r, h_ - 1), std::min(c, w_ - 1));
  }

  std::size_t height() const { return h_; }
  std::size_t width() const { return w_; }

 private:
  std::size_t h_, w_;
  std::vector<int> data_;
};

void roundtrip_plane(Plane& plane, const std::array<int, 64>& table) {
  std::size_t bh = (plane.height() + 7) / 8;
  std::size_t bw = (plane.width() + 7) / 8;
  double block[64];
  double tmp[64];
  for (std::size_t by = 0; by < bh; ++by) {
    for (std::size_t bx = 0; bx < bw; ++bx) {
      for (std::size_t r = 0; r < 8; ++r)
        for (std::size_t c = 0; c < 8; ++c)
          block[r * 8 + c] =
              static_cast<double>(plane.clamped(by * 8 + r, bx * 8 + c)) -
              128.0;
      jpeg_detail::dct8x8(block, tmp);
      for (std::size_t i = 0; i < 64; ++i) {
        long q = std::lround(tmp[i] / table[i]);
        tmp[i] = static_cast<double>(q) * table[i];
      }
      jpeg_detail::idct8x8(tmp, block);
      for (std::size_t r = 0; r < 8; ++r) {
        std::size_t y = by * 8 + r;
        if (y >= plane.height()) break;
        for (std::size_t c = 0; c < 8; ++c) {
          std::size_t x = bx * 8 + c;
          if (x >= plane.width()) break;
          long v = std::lround(block[r * 8 + c] + 128.0);
          plane.at(y, x) = static_cast<int>(std::clamp(v, 0L, 255L));
        }
      }
    }
  }
}

}  // namespace

JpegQuantTables jpeg_quant_tables(int quality) {
  if (quality < 1 || quality > 100)
    throw std::invalid_argument("jpeg quality must lie in [1, 100]");
  int scale = quality < 50 ? 5000 / quality : 200 - 2 * quality;
  return {scale_table(kBaseLuma, scale), scale_table(kBaseChroma, scale)};
}

namespace jpeg_detail {

void dct8x8(const double in[64], double out[64]) {
  const auto& b = basis();
  double tmp[64];
  // rows: tmp = in * M^T
  for (int r = 0; r < 8; ++r)
    for (int u = 0; u < 8; ++u) {
      double s = 0.0;
      for (int x = 0; x < 8; ++x) s += in[r * 8 + x] * b.m[u][x];
      tmp[r * 8 + u] = s;
    }
  // columns: out = M * tmp
  for (int u = 0; u < 8; ++u)
    for (int c = 0; c < 8; ++c) {
      double s = 0.0;
      for (int x = 0; x < 8; ++x) s += b.m[u][x] * tmp[x * 8 + c];
      out[u * 8 + c] = s;
    }
}

void idct8x8(const double in[64], double out[64]) {
  const auto& b = basis();
  double tmp[64];
  // columns: tmp = M^T * in
  for (int x = 0; x < 8; ++x)
    for (int c = 0; c < 8; ++c) {
      double s = 0.0;
      for (int u = 0; u < 8; ++u) s += b.m[u][x] * in[u * 8 + c];
      tmp[x * 8 + c] = s;
    }
  // rows: out = tmp * M
  for (int r = 0; r < 8; ++r)
    for (int x = 0; x < 8; ++x) {
      double s = 0.0;
      for (int u = 0; u < 8; ++u) s += tmp[r * 8 + u] * b.m[u][x];
      out[r * 8 + x] = s;
    }
}

void rgb_to_ycbcr(int r, int g, int b, int& y, int& cb, int& cr) {
  y = static_cast<int>(std::lround(0.299 * r + 0.587 * g + 0.114 * b));
  cb = static_cast<int>(std::lround(-0.168736 * r - 0.331264 * g + 0.5 * b)) +
       128;
  cr = static_cast<int>(std::lround(0.5 * r - 0.418688 * g - 0.081312 * b)) +
       128;
  y = std::clamp(y, 0, 255);
  cb = std::clamp(cb, 0, 255);
  cr = std::clamp(cr, 0, 255);
}

void ycbcr_to_rgb(int y, int cb, int cr, int& r, int& g, int& b) {
  double cbd = cb - 128.0;
  double crd = cr - 128.0;
  r = static_cast<int>(std::lround(y + 1.402 * crd));
  g = static_cast<int>(std::lround(y - 0.344136 * cbd - 0.714136 * crd));
  b = static_cast<int>(std::lround(y + 1.772 * cbd));
  r = std::clamp(r, 0, 255);
  g = std::clamp(g, 0, 255);
  b = std::clamp(b, 0, 255);
}

}  // namespace jpeg_detail

InputVector jpeg_roundtrip(const InputVector& x, int quality) {
  if (!x.shape.is_image())
    throw std::invalid_argument("jpeg_roundtrip: image shape required");
  std::size_t channels = x.shape.channels();
  if (channels != 1 && channels != 3)
    throw std::invalid_argument("jpeg_roundtrip: 1 or 3 channels required");
  std::size_t h = x.shape.height();
  std::size_t w = x.shape.width();
  JpegQuantTables tables = jpeg_quant_tables(quality);

  // Quantize to 8-bit samples.
  auto to_byte = [](double v) {
    long q = std::lround(std::clamp(v, 0.0, 1.0) * 255.0);
    return static_cast<int>(std::clamp(q, 0L, 255L));
  };

  std::vector<Plane> planes;
  planes.reserve(3);
  if (channels == 1) {
    planes.emplace_back(h, w);
    for (std::size_t r = 0; r < h; ++r)
      for (std::size_t c = 0; c < w; ++c)
        planes[0].at(r, c) = to_byte(x.data[r * w + c]);
    roundtrip_plane(planes[0], tables.luma);
  } else {
    for (int i = 0; i < 3; ++i) planes.emplace_back(h, w);
    std::size_t plane_sz = h * w;
    for (std::size_t r = 0; r < h; ++r)
      for (std::size_t c = 0; c < w; ++c) {
        std::size_t i = r * w + c;
        int y, cb, cr;
        jpeg_detail::rgb_to_ycbcr(to_byte(x.data[i]),
                                  to_byte(x.data[plane_sz + i]),
                                  to_byte(x.data[2 * plane_sz + i]), y, cb, cr);
        planes[0].at(r, c) = y;
        planes[1].at(r, c) = cb;
        planes[2].at(r, c) = cr;
      }
    roundtrip_plane(planes[0], tables.luma);
    roundtrip_plane(planes[1], tables.chroma);
    roundtrip_plane(planes[2], tables.chroma);
  }

  InputVector out = x;
  if (channels == 1) {
    for (std::size_t r = 0; r < h; ++r)
      for (std::size_t c = 0; c < w; ++c)
        out.data[r * w + c] = planes[0].at(r, c) / 255.0;
  } else {
    std::size_t plane_sz = h * w;
    for (std::size_t r = 0; r < h; ++r)
      for (std::size_t c = 0; c < w; ++c) {
        std::size_t i = r * w + c;
        int rr, gg, bb;
        jpeg_detail::ycbcr_to_rgb(planes[0].at(r, c), planes[1].at(r, c),
                                  planes[2].at(r, c), rr, gg, bb);
        out.data[i] = rr / 255.0;
        out.data[plane_sz + i] = gg / 255.0;
        out.data[2 * plane_sz + i] = bb / 255.0;
      }
  }
  return out;
}

}  // namespace confgate::defense
