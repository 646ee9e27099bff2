#pragma once

#include <array>
#include <cstdint>

#include "confgate/core/types.hpp"

namespace confgate::defense {

// Quantization matrices in row-major zigzag-free order, scaled for a given
// quality setting. luma is used for Y, chroma for Cb and Cr.
struct JpegQuantTables {
  std::array<int, 64> luma;
  std::array<int, 64> chroma;
};

// Baseline quantization tables scaled by the usual quality mapping:
// scale = q < 50 ? 5000 / q : 200 - 2 q, entry = clamp((base * scale + 50) / 100, 1, 255).
// quality must lie in [1, 100].
JpegQuantTables jpeg_quant_tables(int quality);

// Degrades an image the way a JPEG encode/decode cycle would: quantize to
// 8-bit, convert RGB to YCbCr (grayscale images skip the color step), split
// into 8x8 blocks with edge replication at the borders, DCT, quantize with
// the quality-scaled tables, dequantize, inverse DCT, convert back, and
// return the result rescaled to [0, 1]. Chroma is kept at full resolution
// (no subsampling) and no entropy coding is involved since it does not
// change pixel values.
core::InputVector jpeg_roundtrip(const core::InputVector& x, int quality);

// Pieces exposed for testing.
namespace jpeg_detail {

// Forward 8x8 DCT with orthonormal scaling; out may alias in.
void dct8x8(const double in[64], double out[64]);
void idct8x8(const double in[64], double out[64]);

// BT.601 full-range conversions on [0, 255] integer samples, rounded the
// way a baseline codec rounds them.
void rgb_to_ycbcr(int r, int g, int b, int& y, int& cb, int& cr);
void ycbcr_to_rgb(int y, int cb, int cr, int& r, int& g, int& b);

}  // namespace jpeg_detail

}  // namespace confgate::defense
