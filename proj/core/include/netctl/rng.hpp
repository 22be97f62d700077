#pragma once

#include <cstdint>
#include <random>

namespace netctl {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Counter-based stream: the value depends only on the key, never on call order.
inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                                  std::uint64_t c = 0) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ (b * 0xD6E8FEB86659FD93ULL));
  return splitmix64(h ^ (c * 0xA0761D6478BD642FULL));
}

inline double counter_uniform(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                              std::uint64_t c = 0) {
  return static_cast<double>(counter_hash(seed, a, b, c) >> 11) * 0x1.0p-53;
}

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

}  // namespace netctl
