#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace levyconv {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed of the stream for draw `index` under `master`.
///
/// derive_seed(m, i) = mix64(mix64(m + phi) ^ mix64((i + 1) * phi)), with phi
/// the 64-bit golden-ratio increment. Streams depend only on (m, i), so an
/// ensemble can be generated in any order or in parallel with identical results.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  constexpr std::uint64_t kPhi = 0x9E3779B97F4A7C15ULL;
  return mix64(mix64(master + kPhi) ^ mix64((index + 1) * kPhi));
}

/// Per-draw random stream. The engine is std::mt19937_64, whose output sequence
/// is fixed by the standard; the variate transforms below are written out so
/// results do not depend on the standard library's distribution classes.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(seed) {}
  Stream(std::uint64_t master, std::uint64_t index) : engine_(derive_seed(master, index)) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1).
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Exponential with the given rate.
  double exponential(double rate);

  /// Poisson with the given mean (inversion; large means are split).
  std::uint64_t poisson(double mean);

  /// Index drawn with probability proportional to `weights[i]`.
  std::size_t categorical(std::span<const double> weights, double total);

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace levyconv
