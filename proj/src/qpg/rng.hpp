#pragma once

#include <cmath>
#include <cstdint>

namespace qpg {

// SplitMix64 step, used for seeding and for deriving per-stream seeds.
inline std::uint64_t splitmix64(std::uint64_t &state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed for work unit `index` under `master`. Work units keyed by index get
// bit-identical streams whether they run serially or in parallel.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t s = master;
  const std::uint64_t mixed = splitmix64(s);
  s = mixed ^ (0x9e3779b97f4a7c15ULL * (index + 1));
  return splitmix64(s);
}

// xoshiro256++ (Blackman & Vigna), state expanded from the seed via SplitMix64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto &word : state_) word = splitmix64(s);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on (0,1); zero excluded so log() below stays finite.
  double uniform() {
    for (;;) {
      const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
      if (u > 0.0) return u;
    }
  }

  // Standard normal, Box-Muller with the spare value cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double a = 2.0 * 3.141592653589793238462643383279502884 * uniform();
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace qpg
