#pragma once

#include <cmath>
#include <cstdint>

namespace randip {

// Splittable counter-based generator in the SplittableRandom family:
// each output is a finalizer pass over state += gamma, with the (state,
// gamma) pair derived from (seed, stream). Identical (seed, stream)
// reproduces the identical draw sequence; distinct streams get distinct
// odd gammas, so parallel trials need no coordination.
//
// Gaussian draws use the polar Box-Muller transform (sqrt/log only, no
// trig), with the spare variate cached. Both choices are part of the
// reproducibility contract and must not change.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
      : seed_(seed), stream_(stream_id) {
    const std::uint64_t z = seed + kGolden * (stream_id + 1);
    state_ = mix64(z);
    gamma_ = mix_gamma(mix64(z + kGolden));
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  std::uint64_t next_u64() {
    state_ += gamma_;
    return mix64(state_);
  }

  // Uniform in [0, 1) with 53 random mantissa bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Standard normal draw, N(0, 1).
  double next_gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * next_unit() - 1.0;
      v = 2.0 * next_unit() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  static std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  // Odd, with enough 01/10 bit transitions to be a good increment.
  static std::uint64_t mix_gamma(std::uint64_t z) {
    z = (z ^ (z >> 33)) * 0xFF51AFD7ED558CCDULL;
    z = (z ^ (z >> 33)) * 0xC4CEB9FE1A85EC53ULL;
    z = (z ^ (z >> 33)) | 1ULL;
    const int transitions = __builtin_popcountll(z ^ (z >> 1));
    return (transitions < 24) ? z ^ 0xAAAAAAAAAAAAAAAAULL : z;
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t state_ = 0;
  std::uint64_t gamma_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace randip
