#pragma once

#include <cstdint>

namespace mppc {

// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// Keyed counter hash: the output depends only on the key triple, so any
// (seed, sample, slot) substream can be regenerated in isolation and the
// result never depends on worker layout.
inline std::uint64_t counter_hash(std::uint64_t k0, std::uint64_t k1,
                                  std::uint64_t k2) {
  std::uint64_t h = mix64(k0 + 0x9e3779b97f4a7c15ULL);
  h = mix64(h ^ (k1 + 0xd1b54a32d192ed03ULL));
  h = mix64(h ^ (k2 + 0x8ebc6af09c88c6e3ULL));
  return h;
}

// Uniform double in [0,1) from the top 53 bits of a hash word.
inline double uniform53(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace mppc
