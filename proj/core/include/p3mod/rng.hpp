#pragma once

// Deterministic, platform-independent RNG. std::mt19937 streams are
// portable but the standard distributions are not; sampling here is
// hand-rolled so that seeded runs produce identical reports everywhere.

#include <cstdint>

namespace p3mod {

class Rng {
 public:
  explicit Rng(uint64_t seed, uint64_t stream = 0) : s_(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1))) {
    next();  // decorrelate trivial seeds
  }

  uint64_t next() {
    // splitmix64
    uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n), n > 0; rejection sampling, bias-free.
  uint64_t below(uint64_t n) {
    uint64_t limit = ~uint64_t(0) - ~uint64_t(0) % n;
    uint64_t x;
    do { x = next(); } while (x >= limit);
    return x % n;
  }

  uint8_t trit() { return static_cast<uint8_t>(below(3)); }

 private:
  uint64_t s_;
};

}  // namespace p3mod
