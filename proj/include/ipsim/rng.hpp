#pragma once

#include <cmath>
#include <cstdint>

namespace ipsim {

// Deterministic counter-based generator built on the splitmix64 mixing
// function.  Every draw hashes (origin, counter), so streams derived from the
// same seed but different stream ids never overlap and results are identical
// across platforms and thread schedules.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : origin_(mix(seed ^ kSeedSalt)) {}

  // Stream for trajectory / worker `stream_id` of a run seeded with `seed`.
  static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
    Rng r(seed);
    r.origin_ = mix(r.origin_ + mix(stream_id + kStreamSalt));
    return r;
  }

  std::uint64_t next_u64() { return mix(origin_ + (++counter_) * kGamma); }

  // Uniform on [0, 1) with 53 random bits; avoids std::uniform_real_distribution,
  // whose output is implementation-defined.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller (deterministic, unlike std::normal_distribution).
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    while (u1 == 0.0) u1 = next_double();
    const double u2 = next_double();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    constexpr double two_pi = 6.283185307179586476925286766559;
    spare_ = mag * std::sin(two_pi * u2);
    have_spare_ = true;
    return mag * std::cos(two_pi * u2);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
  static constexpr std::uint64_t kSeedSalt = 0x5851F42D4C957F2Dull;
  static constexpr std::uint64_t kStreamSalt = 0x14057B7EF767814Full;

  static std::uint64_t mix(std::uint64_t z) {
    z += kGamma;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t origin_ = 0;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace ipsim
