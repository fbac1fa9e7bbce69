// Deterministic random number generation ("splitmix64-v1").
//
// Every simulation consumes randomness through a caller-owned Rng so that a
// (seed, instance, learner) triple replays to the identical trajectory. The
// engine is splitmix64: 64-bit state advanced by the golden-ratio increment
// and finalized with the mix64 permutation below. Streams are derived as
//
//   derive_stream_seed(master, k) = mix64(master + (k + 1) * 0x9E3779B97F4A7C15)
//
// which is the documented seed-derivation contract echoed in result metadata.
// Integer output is platform-independent; the continuous samplers below are
// deterministic given IEEE-754 doubles and the platform's libm.
#pragma once

#include <cstdint>

namespace cmab {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t derive_stream_seed(std::uint64_t master_seed,
                                                  std::uint64_t stream) noexcept {
  return mix64(master_seed + (stream + 1) * kGoldenGamma);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next_u64() noexcept {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // True with probability p. Exact for p = 0 and p = 1.
  bool bernoulli(double p) noexcept { return uniform01() < p; }

  // Standard normal (Marsaglia polar; the spare deviate is cached).
  double normal();

  // Gamma(shape, 1) for any shape > 0 (Marsaglia-Tsang squeeze method,
  // with the usual power-of-uniform boost for shape < 1).
  double gamma(double shape);

  // Beta(a, b) via two gamma draws.
  double beta(double a, double b);

 private:
  std::uint64_t state_;
  double spare_normal_ = 0.0;
  bool has_spare_normal_ = false;
};

}  // namespace cmab
