#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "defectus/field.hpp"

namespace defectus {

/// Independent stream keyed by (seed, index).  std::seed_seq and
/// std::mt19937_64 are fully specified by the standard, so a stream is the
/// same on every platform and independent of which worker consumes it.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

/// Uniform integer in [0, n) by rejection (std distributions are not
/// portable across standard libraries).
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

/// FNV-1a; stable across platforms, used to key streams by content.
inline std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline Fel uniform_element(const Field& F, std::mt19937_64& rng) {
  return F.element(uniform_below(rng, F.order()));
}

inline Fel uniform_nonzero(const Field& F, std::mt19937_64& rng) {
  return F.element(1 + uniform_below(rng, F.order() - 1));
}

}  // namespace defectus
