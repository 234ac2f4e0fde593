#pragma once

#include <cstdint>
#include <random>

namespace fdecert {

/// splitmix64 finalizer; used to derive independent per-sample seeds so any
/// sampled object can be regenerated from (seed, stream, index) alone.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1) + 0xbf58476d1ce4e5b9ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// mt19937_64 wrapped with a fixed uniform mapping. The standard
/// distributions are implementation defined, so the mapping is done by hand
/// to keep sampled values identical across toolchains.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

private:
  std::mt19937_64 eng_;
};

}  // namespace fdecert
