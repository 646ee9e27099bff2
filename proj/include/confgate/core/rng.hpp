#pragma once

#include <cstdint>
#include <random>

namespace confgate::core {

/// Deterministic random stream identified by (seed, stream id). Identical
/// ids reproduce identical draw sequences on every run and under any thread
/// schedule; forked child streams depend only on the parent's id pair, not
/// on how much the parent has been consumed.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  /// Child stream for a numbered subtask. Pure function of the id pair.
  RngStream fork(std::uint64_t instance) const;

  std::uint64_t next_u64();
  /// Uniform in [0, 1).
  double uniform01();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer in [0, n). Requires n > 0.
  std::uint64_t uniform_int(std::uint64_t n);
  /// Standard normal via Box-Muller (no cached spare, two draws per call).
  double normal();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

/// Mixes (seed, stream) into a well-spread 64-bit value (splitmix64).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

inline RngStream fork_rng(const RngStream& master, std::uint64_t instance) {
  return master.fork(instance);
}

}  // namespace confgate::core
