#include "confgate/core/rng.hpp"

#include <cmath>

namespace confgate::core {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream ^ 0xA3EC4E93C0A1B2C5ULL));
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(mix_seed(seed, stream)) {}

RngStream RngStream::fork(std::uint64_t instance) const {
  return RngStream(seed_, splitmix64(stream_ * 0x9E3779B97F4A7C15ULL + instance + 1));
}

std::uint64_t RngStream::next_u64() { return engine_(); }

double RngStream::uniform01() {
  // 53 significant bits -> [0, 1)
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

std::uint64_t RngStream::uniform_int(std::uint64_t n) {
  // Rejection-free would bias large n; desk-scale n makes the bias
  // negligible but rejection keeps draws exact.
  std::uint64_t limit = ~0ULL - (~0ULL % n + 1) % n;
  std::uint64_t v;
  do {
    v = next_u64();
  } while (v > limit);
  return v % n;
}

double RngStream::normal() {
  // Box-Muller; u1 shifted into (0, 1] so the log is finite.
  double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace confgate::core
