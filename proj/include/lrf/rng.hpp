#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace lrf {

// Seed derivation for parallel replicates: stream k of a base seed is
// splitmix64(base ^ splitmix64(k)). Stable across runs and platforms.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t stream) {
  return splitmix64(base_seed ^ splitmix64(stream));
}

inline std::mt19937_64 make_rng(std::uint64_t base_seed, std::uint64_t stream) {
  return std::mt19937_64(derive_seed(base_seed, stream));
}

// Box-Muller on raw 64-bit draws. std::normal_distribution is
// implementation-defined, this keeps field realizations identical across
// standard libraries.
class NormalSampler {
 public:
  explicit NormalSampler(std::mt19937_64 rng) : rng_(rng) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    double u2 = uniform01();
    while (u1 <= 1e-300) u1 = uniform01();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    spare_ = mag * std::sin(6.283185307179586477 * u2);
    have_spare_ = true;
    return mag * std::cos(6.283185307179586477 * u2);
  }

 private:
  double uniform01() {
    return (rng_() >> 11) * 0x1.0p-53;
  }
  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace lrf
