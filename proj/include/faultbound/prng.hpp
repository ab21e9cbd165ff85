#pragma once

#include <cstdint>

namespace faultbound {

// All randomness in the toolkit comes from one SplitMix64-style generator,
// addressed as (seed, domain, stream, word). Random word access keeps results
// bit-identical for any batch partition or worker count.

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

// SplitMix64 output mix.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

// Disjoint stream families: primary-input bits, per-gate noise, standalone
// channel noise, sensitivity sampling.
enum class StreamDomain : std::uint64_t {
  kPrimaryInput = 1,
  kGateNoise = 2,
  kChannel = 3,
  kSampling = 4,
  kTest = 5,
};

constexpr std::uint64_t stream_base(std::uint64_t seed, StreamDomain domain,
                                    std::uint64_t stream) {
  const std::uint64_t root =
      mix64(seed ^ static_cast<std::uint64_t>(domain) * 0xD1B54A32D192ED03ULL);
  return mix64(root + (stream + 1) * kGoldenGamma);
}

// Word `w` of a stream; equals the w-th output of SplitMix64 seeded at `base`.
constexpr std::uint64_t stream_word_at(std::uint64_t base, std::uint64_t w) {
  return mix64(base + (w + 1) * kGoldenGamma);
}

// Threshold for Bernoulli(p) via `draw < threshold` on 64-bit uniform draws;
// resolution 2^-64, exact at p = 0 and p = 0.5.
inline std::uint64_t bernoulli_threshold(double p) {
  if (p <= 0.0) return 0;
  const long double scaled =
      static_cast<long double>(p) * 18446744073709551616.0L;  // 2^64
  if (scaled >= 18446744073709551615.0L) return ~0ULL;
  return static_cast<std::uint64_t>(scaled);
}

}  // namespace faultbound
