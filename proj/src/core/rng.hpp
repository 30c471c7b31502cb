#pragma once

#include <cmath>
#include <cstdint>

namespace clab::rng {

// SplitMix64 output function. Statistically solid for a counter input and
// cheap enough to evaluate per draw.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based stream: draw i of stream s under seed k is a pure function of
// (k, s, i). Substreams are disjoint by construction, so parallel workers can
// consume stream(seed, worker) and any schedule reproduces the same values.
class Stream {
 public:
  explicit Stream(std::uint64_t seed, std::uint64_t stream_id = 0)
      : key_(mix64(seed ^ mix64(stream_id ^ 0x6c62272e07bb0142ULL))) {}

  Stream split(std::uint64_t substream) const {
    Stream s = *this;
    s.key_ = mix64(key_ ^ mix64(substream ^ 0x27220a95fe4d5bb1ULL));
    s.counter_ = 0;
    s.have_cached_normal_ = false;
    return s;
  }

  std::uint64_t next_u64() { return mix64(key_ ^ counter_++); }

  // Uniform on [0, 1).
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1]; safe as a log() argument.
  double next_unit_positive() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; second value cached.
  double next_normal() {
    if (have_cached_normal_) {
      have_cached_normal_ = false;
      return cached_normal_;
    }
    double u = next_unit_positive();
    double v = next_unit();
    double r = std::sqrt(-2.0 * std::log(u));
    double angle = 6.283185307179586476925286766559 * v;
    cached_normal_ = r * std::sin(angle);
    have_cached_normal_ = true;
    return r * std::cos(angle);
  }

  // Uniform integer in [0, bound) by rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    for (;;) {
      std::uint64_t x = next_u64();
      if (x < limit) return x % bound;
    }
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double cached_normal_ = 0.0;
  bool have_cached_normal_ = false;
};

}  // namespace clab::rng
