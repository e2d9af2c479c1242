#pragma once

#include <cstdint>

namespace bellbound {

/// Default seed for bare invocations. Fixed so that unseeded runs reproduce.
inline constexpr std::uint64_t kDefaultSeed = 0x5EED0B001EULL;

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}
}  // namespace detail

/// Counter-based stream keyed by (seed, stream id, trial). Each draw hashes
/// the key and a running counter, so trial t's randomness is a pure function
/// of (seed, t) and trials can be generated on any number of threads with
/// identical results.
class TrialStream {
 public:
  // Stream ids separate independent random purposes under one seed.
  static constexpr std::uint64_t kModelStream = 0;
  static constexpr std::uint64_t kRotationStream = 1;

  TrialStream(std::uint64_t seed, std::uint64_t trial,
              std::uint64_t stream = kModelStream) {
    std::uint64_t h = detail::mix64(seed ^ 0x9E3779B97F4A7C15ULL);
    h = detail::mix64(h ^ (stream + 0xD1B54A32D192ED03ULL));
    base_ = detail::mix64(h ^ (trial * 0x2545F4914F6CDD1DULL + 1));
  }

  std::uint64_t next_u64() {
    counter_ += 0x9E3779B97F4A7C15ULL;
    return detail::mix64(base_ + counter_);
  }

  /// Uniform in [0, 1), 53-bit resolution.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  int next_sign() { return (next_u64() >> 63) ? -1 : 1; }

  /// Uniform index in [0, n) via 128-bit multiply-shift.
  std::uint64_t next_index(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  std::uint64_t base_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace bellbound
