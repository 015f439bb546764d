#pragma once

#include <cstdint>

namespace vdmlab {

/// splitmix64 finalizer; decorrelates seeds derived from (seed, lane).
inline std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t lane) noexcept {
  return mix64(mix64(seed) ^ (lane * 0xd1b54a32d192ed03ULL));
}

}  // namespace vdmlab
