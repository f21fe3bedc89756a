#pragma once

#include <cstdint>
#include <random>

namespace macagg {

// Stateless 64-bit mixer; used to derive independent stream seeds.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t mix_seed(uint64_t a, uint64_t b) {
  return splitmix64(a ^ splitmix64(b + 0x632be59bd9b4e019ULL));
}

// Deterministic helpers on top of std::mt19937_64. The engine's output
// sequence is pinned by the standard; std::uniform_*_distribution is not,
// so the bounded draws are done by hand.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(splitmix64(seed)) {}

  uint64_t next() { return eng_(); }

  // Uniform in [0, n), unbiased (rejection on the top band).
  uint64_t bounded(uint64_t n) {
    if (n == 0) return 0;
    uint64_t threshold = (0 - n) % n;
    for (;;) {
      uint64_t r = eng_();
      if (r >= threshold) return r % n;
    }
  }

  // Uniform double in [0, 1) with 53-bit resolution.
  double uniform01() { return double(eng_() >> 11) * 0x1.0p-53; }

  bool coin(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace macagg
