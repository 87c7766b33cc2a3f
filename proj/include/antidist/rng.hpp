#pragma once

#include <cmath>
#include <cstdint>

#include "antidist/types.hpp"

namespace antidist {

/// Counter-based random stream (philox4x32-10) keyed by a 64-bit seed.
/// The same seed reproduces the same draw sequence bit-for-bit on any
/// platform, and distinct seeds give independent streams, so per-trial
/// streams can be derived by seed arithmetic without shared state.
class RngStream {
 public:
  static constexpr const char* kName = "philox4x32-10/v1";

  explicit RngStream(std::uint64_t seed)
      : key0_(static_cast<std::uint32_t>(seed)),
        key1_(static_cast<std::uint32_t>(seed >> 32)) {}

  std::uint64_t next_u64() {
    if (avail_ < 2) refill();
    avail_ -= 2;
    return (static_cast<std::uint64_t>(out_[avail_ + 1]) << 32) | out_[avail_];
  }

  /// Uniform in [0, 1) with 53 random bits.
  Real next_unit() {
    return static_cast<Real>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller on the uniform stream.
  Real next_gaussian() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const Real u1 = Real(1) - next_unit();  // (0, 1]
    const Real u2 = next_unit();
    const Real r = std::sqrt(Real(-2) * std::log(u1));
    const Real theta = Real(2) * Real(M_PI) * u2;
    cached_ = r * std::sin(theta);
    have_cached_ = true;
    return r * std::cos(theta);
  }

 private:
  static void round(std::uint32_t x[4], std::uint32_t k0, std::uint32_t k1) {
    const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * x[0];
    const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * x[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    x[0] = hi1 ^ x[1] ^ k0;
    x[1] = lo1;
    x[2] = hi0 ^ x[3] ^ k1;
    x[3] = lo0;
  }

  void refill() {
    out_[0] = static_cast<std::uint32_t>(block_);
    out_[1] = static_cast<std::uint32_t>(block_ >> 32);
    out_[2] = 0;
    out_[3] = 0;
    std::uint32_t k0 = key0_, k1 = key1_;
    for (int r = 0; r < 10; ++r) {
      round(out_, k0, k1);
      k0 += 0x9E3779B9u;
      k1 += 0xBB67AE85u;
    }
    ++block_;
    avail_ = 4;
  }

  std::uint32_t key0_, key1_;
  std::uint64_t block_ = 0;
  std::uint32_t out_[4] = {0, 0, 0, 0};
  int avail_ = 0;
  bool have_cached_ = false;
  Real cached_ = 0;
};

}  // namespace antidist
