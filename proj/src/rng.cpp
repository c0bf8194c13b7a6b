#include "lyapsep/rng.hpp"

namespace lyapsep {

namespace {
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace

RngStream RngStream::for_task(std::uint64_t seed, std::uint64_t stream) {
  return RngStream(mix64(seed + 0x9e3779b97f4a7c15ULL) ^
                   mix64(stream + 0x632be59bd9b4e019ULL));
}

}  // namespace lyapsep
