#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace vmpt {

// SplitMix64 (Steele, Lea, Flood 2014). Used for seeding and stream mixing.
//   z += 0x9e3779b97f4a7c15
//   z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//   z = (z ^ (z >> 27)) * 0x94d049bb133111eb
//   return z ^ (z >> 31)
class SplitMix64 {
 public:
  constexpr explicit SplitMix64(std::uint64_t state) : state_(state) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// Final SplitMix64 output function applied to a single word.
constexpr std::uint64_t mix64(std::uint64_t x) {
  return SplitMix64(x).next();
}

/// xoshiro256** 1.0 (Blackman & Vigna). 256-bit state, seeded by four
/// consecutive SplitMix64 outputs. Output: rotl(s1 * 5, 7) * 9.
///
/// All derived draws below use only integer arithmetic plus the exact
/// 53-bit conversion in uniform01(), so a given seed produces the same
/// sequence on every conforming platform.
class Rng {
 public:
  using result_type = std::uint64_t;

  constexpr explicit Rng(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& word : s_) word = sm.next();
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() { return next(); }

  constexpr std::uint64_t next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform integer in [0, bound) by rejection; bound > 0.
  constexpr std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform integer in [lo, hi], lo <= hi.
  constexpr std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span =
        static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    if (span == std::numeric_limits<std::uint64_t>::max()) {
      return static_cast<std::int64_t>(next());
    }
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) +
                                     below(span + 1));
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return uniform01() < p;
  }

  // Knuth's multiplication method; fine for the small rates used per tick.
  std::int64_t poisson(double lambda) {
    if (lambda <= 0.0) return 0;
    const double limit = std::exp(-lambda);
    std::int64_t k = 0;
    double product = uniform01();
    while (product > limit) {
      ++k;
      product *= uniform01();
    }
    return k;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> s_{};
};

// Domain tags keep the streams below disjoint.
enum class StreamTag : std::uint64_t {
  Arrivals = 0x41525256,  // "ARRV"
  Service = 0x53455256,   // "SERV"
  Vm = 0x564d5f5f,        // "VM__"
};

/// Seed of an independent stream: a SplitMix64 chain over
/// (seed, tag, k1, k2, k3), h <- mix64(h ^ word) for each word in order.
constexpr std::uint64_t stream_seed(std::uint64_t seed, StreamTag tag,
                                    std::uint64_t k1 = 0, std::uint64_t k2 = 0,
                                    std::uint64_t k3 = 0) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ static_cast<std::uint64_t>(tag));
  h = mix64(h ^ k1);
  h = mix64(h ^ k2);
  h = mix64(h ^ k3);
  return h;
}

inline Rng arrival_stream(std::uint64_t seed) {
  return Rng(stream_seed(seed, StreamTag::Arrivals));
}

inline Rng service_stream(std::uint64_t seed, std::uint32_t service) {
  return Rng(stream_seed(seed, StreamTag::Service, service));
}

inline Rng vm_stream(std::uint64_t seed, std::uint32_t service,
                     std::uint32_t dc, std::uint32_t vm) {
  return Rng(stream_seed(seed, StreamTag::Vm, service, dc, vm));
}

}  // namespace vmpt
