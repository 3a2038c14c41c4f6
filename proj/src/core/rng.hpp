#pragma once

#include <cstdint>

namespace qumvqd {

// Deterministic, platform-independent RNG. std::uniform_real_distribution is
// implementation-defined, so uniform doubles are produced from the raw bits
// directly; results are bit-stable across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {
    // decorrelate near-identical seeds
    next_u64();
    next_u64();
  }

  std::uint64_t next_u64() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // uniform in [lo, hi)
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  // derive an independent stream for (seed, a, b)
  static std::uint64_t stream(std::uint64_t seed, std::uint64_t a,
                              std::uint64_t b = 0) {
    Rng r(seed ^ (a * 0xd1342543de82ef95ULL) ^ (b * 0xaf251af3b0f025b5ULL));
    return r.next_u64();
  }

private:
  std::uint64_t state_;
};

}  // namespace qumvqd
