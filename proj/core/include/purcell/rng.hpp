#pragma once

#include <cmath>
#include <cstdint>

#include "purcell/types.hpp"

namespace purcell {

// Counter-based generator: every variate is a pure function of
// (seed, counter), so parallel chunking or reordering cannot change a
// sampled stream. Mixing is splitmix64 applied to a combined word.

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class CounterRng {
 public:
  explicit CounterRng(uint64_t seed) : seed_(splitmix64(seed ^ 0x853c49e6748fea9bULL)) {}

  uint64_t bits(uint64_t counter, uint64_t stream = 0) const {
    uint64_t h = splitmix64(seed_ ^ splitmix64(counter));
    return splitmix64(h ^ (stream * 0xda942042e4dd58b5ULL + 0x2545f4914f6cdd1dULL));
  }

  // Uniform in (0, 1]; never returns 0 so it is safe under log().
  double uniform(uint64_t counter, uint64_t stream = 0) const {
    return ((bits(counter, stream) >> 11) + 1.0) * 0x1.0p-53;
  }

  // Uniform in [lo, hi).
  double uniform(uint64_t counter, uint64_t stream, double lo, double hi) const {
    return lo + (hi - lo) * ((bits(counter, stream) >> 11) * 0x1.0p-53);
  }

  // Standard normal via Box-Muller; deterministic per (counter, stream).
  double normal(uint64_t counter, uint64_t stream = 0) const {
    const double u1 = uniform(counter, 2 * stream);
    const double u2 = uniform(counter, 2 * stream + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

 private:
  uint64_t seed_;
};

}  // namespace purcell
