#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace hardy {

// Portable deterministic randomness. The raw stream is std::mt19937_64
// (bit-exact across standard libraries); floating-point draws use the
// fixed (x >> 11) * 2^-53 mapping instead of std::uniform_real_distribution,
// whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // uniform in [0, 1)
  double next_u01() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  // uniform integer in [0, n), unbiased via rejection
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t limit = n ? (~std::uint64_t{0} - (~std::uint64_t{0} % n)) : 0;
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % n;
  }

  // log-uniform in [lo, hi], lo > 0
  double next_loguniform(double lo, double hi) {
    const double a = std::log(lo);
    const double b = std::log(hi);
    return std::exp(a + (b - a) * next_u01());
  }

 private:
  std::mt19937_64 eng_;
};

// splitmix64 finalizer; used to derive independent substream seeds from a
// master seed so that reordering or skipping instances never shifts draws.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return mix_seed(base ^ mix_seed(stream + 1));
}

}  // namespace hardy
