#pragma once

// ============================================================================
// rng.hpp
//
// Deterministic, portable noise streams.  Each sensor channel owns an
// independent stream keyed by (seed, channel name), so adding or removing a
// channel never perturbs the draws of any other channel, and identical
// seeds reproduce identical streams on any platform.
//
// Gaussian variates use an explicit Box-Muller transform over raw 64-bit
// engine output (std::normal_distribution is not bit-portable across
// standard library implementations).  Every Gaussian draw consumes exactly
// two engine outputs.
// ============================================================================

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

namespace auvkit {

/** @brief SplitMix64 mixing step; good avalanche for seed derivation. */
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/** @brief FNV-1a 64-bit hash of a channel name. */
inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/** @brief Derive an independent stream seed from a base seed and a name. */
inline std::uint64_t channel_seed(std::uint64_t seed, std::string_view channel) {
  return splitmix64(seed ^ fnv1a64(channel));
}

/**
 * @brief One independent Gaussian/uniform noise stream.
 */
class NoiseStream {
 public:
  NoiseStream(std::uint64_t seed, std::string_view channel)
      : engine_(channel_seed(seed, channel)) {}

  /** @brief Uniform double in (0, 1]; never returns 0. */
  double uniform_pos() {
    // 53 random mantissa bits; +1 ulp shift keeps the value strictly > 0 so
    // log() below is always finite.
    const std::uint64_t bits = engine_() >> 11;
    return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
  }

  /** @brief Standard normal variate (Box-Muller, two engine draws). */
  double gaussian() {
    const double u1 = uniform_pos();
    const double u2 = uniform_pos();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  /** @brief Normal variate with the given variance (not stddev). */
  double gaussian_var(double variance) {
    // Draws are consumed even when variance is 0 so that toggling a channel's
    // variance never shifts the stream.
    const double g = gaussian();
    return variance > 0.0 ? g * std::sqrt(variance) : 0.0;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace auvkit
