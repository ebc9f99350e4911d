#pragma once

#include <cmath>
#include <cstdint>

namespace ftqc {

// Counter-based generator: every draw is a pure function of
// (seed, stream, counter), so results do not depend on how shots are
// distributed across threads.  Mixing is the splitmix64 finalizer.
class CounterRng {
 public:
  CounterRng(uint64_t seed, uint64_t stream) {
    key_ = mix(mix(seed + 0x9e3779b97f4a7c15ull) ^ mix(stream));
  }

  uint64_t next_u64() { return mix(key_ + (++counter_) * 0x9e3779b97f4a7c15ull); }

  // Uniform in [0, 1).
  double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform integer in [0, n).
  uint64_t below(uint64_t n) { return next_u64() % n; }

  // Standard normal via Box-Muller; avoids the implementation-defined
  // sequences of std::normal_distribution.
  double normal() {
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 0) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  static uint64_t mix(uint64_t v) {
    v += 0x9e3779b97f4a7c15ull;
    v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ull;
    v = (v ^ (v >> 27)) * 0x94d049bb133111ebull;
    return v ^ (v >> 31);
  }

 private:
  uint64_t key_;
  uint64_t counter_ = 0;
};

}  // namespace ftqc
