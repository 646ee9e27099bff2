#include <doctest.h>

#include <cmath>

#include "confgate/core/rng.hpp"
#include "confgate/defense/jpeg.hpp"

using namespace confgate;
using core::InputVector;
using core::Shape;
using defense::jpeg_quant_tables;
using defense::JpegQuantTables;

namespace {

double psnr(const InputVector& a, const InputVector& b) {
  double mse = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    mse += (a[i] - b[i]) * (a[i] - b[i]);
  mse /= static_cast<double>(a.size());
  return 10.0 * std::log10(1.0 / mse);
}

InputVector smooth_image(std::size_t channels, std::size_t side) {
  std::vector<double> v(channels * side * side);
  for (std::size_t c = 0; c < channels; ++c)
    for (std::size_t y = 0; y < side; ++y)
      for (std::size_t x = 0; x < side; ++x)
        v[(c * side + y) * side + x] =
            0.5 + 0.4 * std::sin(0.3 * static_cast<double>(x) +
                                 0.2 * static_cast<double>(y) +
                                 static_cast<double>(c));
  return InputVector(Shape(channels, side, side), std::move(v));
}

}  // namespace

TEST_SUITE("jpeg") {

TEST_CASE("quality 50 keeps the base tables, spot-checked against the standard") {
  JpegQuantTables t = jpeg_quant_tables(50);
  // At q = 50 the scale factor is 100, so entry = (base*100 + 50)/100 = base.
  // Well-known corners of the baseline matrices pin the transcription.
  CHECK(t.luma[0] == 16);
  CHECK(t.luma[1] == 11);
  CHECK(t.luma[8] == 12);
  CHECK(t.luma[63] == 99);
  CHECK(t.chroma[0] == 17);
  CHECK(t.chroma[1] == 18);
  CHECK(t.chroma[63] == 99);
}

TEST_CASE("scaled tables match an independent evaluation of the quality curve") {
  JpegQuantTables base = jpeg_quant_tables(50);  // equals the unscaled tables
  for (int q : {1, 10, 35, 60, 75, 90, 95, 99, 100}) {
    int scale = q < 50 ? 5000 / q : 200 - 2 * q;
    JpegQuantTables t = jpeg_quant_tables(q);
    for (int i = 0; i < 64; ++i) {
      int expect_luma =
          std::min(255, std::max(1, (base.luma[i] * scale + 50) / 100));
      int expect_chroma =
          std::min(255, std::max(1, (base.chroma[i] * scale + 50) / 100));
      CHECK(t.luma[i] == expect_luma);
      CHECK(t.chroma[i] == expect_chroma);
    }
  }
}

TEST_CASE("quality 100 quantizes nothing away") {
  JpegQuantTables t = jpeg_quant_tables(100);
  for (int i = 0; i < 64; ++i) {
    CHECK(t.luma[i] == 1);
    CHECK(t.chroma[i] == 1);
  }
}

TEST_CASE("quality bounds are enforced") {
  CHECK_THROWS_AS(jpeg_quant_tables(0), std::invalid_argument);
  CHECK_THROWS_AS(jpeg_quant_tables(101), std::invalid_argument);
}

TEST_CASE("dct is orthonormal: perfect inversion and energy preservation") {
  core::RngStream rng(11);
  double block[64];
  double coeffs[64];
  double back[64];
  for (int rep = 0; rep < 5; ++rep) {
    double energy_in = 0.0;
    for (double& v : block) {
      v = rng.uniform(-128.0, 128.0);
      energy_in += v * v;
    }
    defense::jpeg_detail::dct8x8(block, coeffs);
    double energy_out = 0.0;
    for (double v : coeffs) energy_out += v * v;
    CHECK(energy_out == doctest::Approx(energy_in).epsilon(1e-9));
    defense::jpeg_detail::idct8x8(coeffs, back);
    for (int i = 0; i < 64; ++i)
      CHECK(back[i] == doctest::Approx(block[i]).epsilon(1e-9));
  }
}

TEST_CASE("dct of a constant block is a pure DC term of 8x the level") {
  double block[64];
  for (double& v : block) v = 21.0;
  double coeffs[64];
  defense::jpeg_detail::dct8x8(block, coeffs);
  CHECK(coeffs[0] == doctest::Approx(168.0).epsilon(1e-12));
  for (int i = 1; i < 64; ++i)
    CHECK(std::abs(coeffs[i]) < 1e-9);
}

TEST_CASE("color conversion round-trips within codec rounding") {
  int y, cb, cr, r2, g2, b2;
  // Gray pixels live on the Y axis: no chroma.
  defense::jpeg_detail::rgb_to_ycbcr(100, 100, 100, y, cb, cr);
  CHECK(y == 100);
  CHECK(cb == 128);
  CHECK(cr == 128);
  for (int r = 0; r <= 255; r += 51)
    for (int g = 0; g <= 255; g += 51)
      for (int b = 0; b <= 255; b += 51) {
        defense::jpeg_detail::rgb_to_ycbcr(r, g, b, y, cb, cr);
        defense::jpeg_detail::ycbcr_to_rgb(y, cb, cr, r2, g2, b2);
        CHECK(std::abs(r2 - r) <= 2);
        CHECK(std::abs(g2 - g) <= 2);
        CHECK(std::abs(b2 - b) <= 2);
      }
}

TEST_CASE("mid-gray survives any quality within one 8-bit step") {
  // A constant block has only a DC coefficient; even coarse quantization
  // moves it by at most half a quantizer bin, and 0.5 * 255 rounds to 128.
  InputVector x(Shape(1, 16, 16), std::vector<double>(256, 0.5));
  for (int q : {10, 50, 95}) {
    InputVector y = defense::jpeg_roundtrip(x, q);
    for (double v : y.data)
      CHECK(std::abs(v - 0.5) <= 1.0 / 255.0 + 1e-12);
  }
}

TEST_CASE("higher quality reconstructs a smooth image more faithfully") {
  InputVector x = smooth_image(1, 24);
  double p25 = psnr(x, defense::jpeg_roundtrip(x, 25));
  double p85 = psnr(x, defense::jpeg_roundtrip(x, 85));
  CHECK(p85 >= p25);
  CHECK(p85 > 25.0);  // and the q85 copy is actually close
}

TEST_CASE("three-channel images round-trip through the color path") {
  InputVector x = smooth_image(3, 16);
  InputVector y = defense::jpeg_roundtrip(x, 90);
  CHECK(y.shape == x.shape);
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(y[i] >= 0.0);
    CHECK(y[i] <= 1.0);
    worst = std::max(worst, std::abs(y[i] - x[i]));
  }
  CHECK(worst < 0.1);
}

TEST_CASE("non-image and unsupported channel counts are rejected") {
  InputVector flat(Shape(std::size_t(64)), std::vector<double>(64, 0.5));
  CHECK_THROWS_AS(defense::jpeg_roundtrip(flat, 75), std::invalid_argument);
  InputVector two(Shape(2, 8, 8), std::vector<double>(128, 0.5));
  CHECK_THROWS_AS(defense::jpeg_roundtrip(two, 75), std::invalid_argument);
}

}  // TEST_SUITE
