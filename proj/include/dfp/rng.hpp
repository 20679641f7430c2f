#pragma once

#include <cmath>
#include <cstdint>

namespace dfp {

// splitmix64 step: the standard 64-bit finalizer-based generator.  We use it
// both as a mixer (to derive independent stream seeds from a run seed plus
// labels) and as the generator behind RandomStream.  Construction is free,
// which matters because simulations derive a fresh stream per (agent, step).
constexpr std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Hash two labels into one seed, order-sensitive.
constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a;
  std::uint64_t h = splitmix64(s);
  s = h ^ b;
  return splitmix64(s);
}

constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return mix_seed(mix_seed(a, b), c);
}

constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                                 std::uint64_t d) {
  return mix_seed(mix_seed(a, b, c), d);
}

// Small deterministic random stream.  All draws are built from splitmix64
// bits with fixed arithmetic, so sequences are identical across platforms
// and compilers (the <random> distributions make no such guarantee).
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64(state_); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n).  Rejection-free modulo is fine here: n is
  // tiny (action counts), so the bias is far below anything observable.
  int uniform_int(int n) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n)); }

  // Standard normal via Box-Muller (pair cached).
  double gaussian() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform01();
    } while (u1 <= 0.0);
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double two_pi = 6.283185307179586476925286766559;
    cached_ = r * std::sin(two_pi * u2);
    has_cached_ = true;
    return r * std::cos(two_pi * u2);
  }

 private:
  std::uint64_t state_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace dfp
