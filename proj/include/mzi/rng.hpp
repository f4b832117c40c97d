// rng.hpp
// Deterministic, portable randomness for the protocol engines.

#pragma once

#include <cstdint>

namespace mzi {

// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

// Splittable per-trial stream: the state is keyed by hashing (seed, stream
// index) and draws follow the SplitMix64 sequence. A given (seed, index)
// pair produces the same draws on every platform and under any scheduling,
// so the parallel engines are bit-identical to the serial reference.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t stream)
      : state_(mix64(seed + 0x9E3779B97F4A7C15ULL) ^
               mix64(stream * 0xD1B54A32D192ED03ULL + 0x2545F4914F6CDD1DULL)) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  // uniform in [0, 1) with 53-bit resolution
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // +1 or -1, equal probability
  int next_sign() { return (next_u64() >> 63) ? -1 : +1; }

 private:
  std::uint64_t state_;
};

} // namespace mzi
