#ifndef LYAPSEP_RNG_HPP
#define LYAPSEP_RNG_HPP

#include <cstdint>

namespace lyapsep {

/// SplitMix64 stream. Small state, full 64-bit period per stream, identical
/// sequences on every platform. Streams are decorrelated by hashing the
/// (seed, stream) pair into the initial state, so every (energy, seed) task
/// owns an independent generator.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(seed) {}

  static RngStream for_task(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

}  // namespace lyapsep

#endif
