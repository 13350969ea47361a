// Self-contained deterministic random streams. The std:: distributions are
// implementation-defined, so every sampler here is spelled out explicitly:
// the same seed produces the same draw sequence on every platform/compiler.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace valnet {

/// splitmix64 finalizer; also used as the seed-derivation hash.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derive an independent child seed from (seed, tag). Chain calls for
/// multi-level streams, e.g. derive_seed(derive_seed(s, kTag), index).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  return mix64(seed ^ (0xd1b54a32d192ed03ULL + mix64(tag)));
}

/// Canonical per-pair stream seed: symmetric in (i, j) by ordering.
constexpr std::uint64_t pair_seed(std::uint64_t seed, int i, int j) {
  const std::uint64_t lo = static_cast<std::uint64_t>(i < j ? i : j);
  const std::uint64_t hi = static_cast<std::uint64_t>(i < j ? j : i);
  return derive_seed(derive_seed(seed, lo), hi);
}

/// xoshiro256++ generator with explicit scalar samplers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    // splitmix64 expansion of the seed into the full state
    std::uint64_t s = seed;
    for (auto& word : state_) {
      s += 0x9e3779b97f4a7c15ULL;
      word = mix64(s);
    }
  }

  std::uint64_t u64() {
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

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in (0, 1]; safe as a log() argument.
  double uniform_pos() { return 1.0 - uniform(); }

  /// Unbiased integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = -n % n;
    for (;;) {
      const std::uint64_t r = u64();
      if (r >= threshold) return r % n;
    }
  }

  /// Standard normal via Box-Muller (cos branch only; no cached spare).
  double normal() {
    const double u1 = uniform_pos();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

  /// Gamma(shape, scale=1), Marsaglia-Tsang; shape < 1 boosted via U^(1/shape).
  double gamma(double shape) {
    if (shape < 1.0) {
      // may underflow to 0 for extreme shapes; callers clamp if positivity matters
      const double u = uniform_pos();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x;
      double v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform_pos();
      const double x2 = x * x;
      if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
      if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  /// Poisson(mean): sequential inversion for small means, PTRS rejection
  /// (Hormann 1993) for large ones.
  std::int64_t poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean < 10.0) {
      const double u = uniform();
      double p = std::exp(-mean);
      double cum = p;
      std::int64_t k = 0;
      while (u > cum && k < 1100) {
        ++k;
        p *= mean / static_cast<double>(k);
        cum += p;
      }
      return k;
    }
    const double b = 0.931 + 2.53 * std::sqrt(mean);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double log_mean = std::log(mean);
    for (;;) {
      const double u = uniform() - 0.5;
      const double v = uniform_pos();
      const double us = 0.5 - std::abs(u);
      const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
      if (us >= 0.07 && v <= v_r) return static_cast<std::int64_t>(kf);
      if (kf < 0.0 || (us < 0.013 && v > us)) continue;
      const double k = kf;
      if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
          k * log_mean - mean - std::lgamma(k + 1.0)) {
        return static_cast<std::int64_t>(kf);
      }
    }
  }

  /// Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  static constexpr double two_pi = 6.283185307179586476925286766559;

  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

}  // namespace valnet
