#pragma once

#include <cstdint>
#include <random>

namespace beasat {

// Deterministic random source. Wraps std::mt19937_64 but derives doubles and
// bounded integers through fixed bit manipulations instead of the standard
// distributions, whose output is not specified across library
// implementations. Same seed, same stream, on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, bound), bound > 0. Rejection sampling keeps it unbiased.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return r % bound;
    }
  }

  bool next_bit() { return (engine_() >> 32) & 1u; }

  bool bernoulli(double p) { return next_double() < p; }

  // splitmix64 finalizer. Used to derive independent child streams from
  // (seed, tag) pairs; neighbouring tags give uncorrelated streams.
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a ^ (b + 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t mix3(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix(mix(a, b), c);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace beasat
