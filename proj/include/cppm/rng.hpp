#ifndef CPPM_RNG_HPP_
#define CPPM_RNG_HPP_

#include <cstdint>

namespace cppm {

// Counter-based generator: draw n of stream s is a pure function of (seed, s, n).
class CounterRng {
 public:
  CounterRng(uint64_t seed, uint64_t stream) : seed_(seed), stream_(stream) {}

  static uint64_t Mix(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  uint64_t At(uint64_t counter) const { return Mix(Mix(Mix(seed_) ^ stream_) ^ counter); }
  uint64_t NextU64() { return At(counter_++); }
  // Uniform on [0, 1).
  double NextDouble() { return static_cast<double>(NextU64() >> 11) * 0x1.0p-53; }

 private:
  uint64_t seed_;
  uint64_t stream_;
  uint64_t counter_ = 0;
};

}  // namespace cppm

#endif  // CPPM_RNG_HPP_
