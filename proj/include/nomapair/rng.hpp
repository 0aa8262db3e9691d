#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace nomapair {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives an independent engine seed for (master seed, stream index). Streams
// with distinct indices never share a splitmix64 trajectory.
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64_next(s);
  s ^= 0xd1b54a32d192ed03ULL * (stream + 1);
  std::uint64_t b = splitmix64_next(s);
  return a ^ (b + 0x2545f4914f6cdd1dULL);
}

// Splittable stream RNG: mt19937_64 keyed by a splitmix64-mixed
// (seed, stream) pair. All randomness in the library flows through this type
// so a (seed, stream) pair pins the full draw sequence.
class RngStream {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64+splitmix64-streams";

  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0)
      : engine_(derive_stream_seed(seed, stream)) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer on [0, bound), rejection-sampled to kill modulo bias.
  std::uint64_t uniform_below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  // Uniform on (0, 1]; safe under log().
  double uniform_pos() { return 1.0 - uniform(); }

  // CN(0, variance): circularly-symmetric complex Gaussian via Box-Muller.
  // Consumes exactly two uniforms per sample.
  std::complex<double> complex_normal(double variance) {
    const double r = std::sqrt(-variance * std::log(uniform_pos()));
    const double phi = 6.283185307179586476925286766559 * uniform();
    return {r * std::cos(phi), r * std::sin(phi)};
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace nomapair
