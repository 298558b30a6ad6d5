#include "levyconv/rng.hpp"

#include <cmath>

namespace levyconv {

double Stream::exponential(double rate) { return -std::log(uniform()) / rate; }

std::uint64_t Stream::poisson(double mean) {
  // e^{-mean} stays comfortably above the double underflow threshold below 500.
  constexpr double kChunk = 500.0;
  std::uint64_t total = 0;
  while (mean > kChunk) {
    total += poisson(kChunk);
    mean -= kChunk;
  }
  if (mean <= 0.0) return total;
  double p = std::exp(-mean);
  double cdf = p;
  const double u = uniform();
  std::uint64_t k = 0;
  while (u > cdf) {
    ++k;
    p *= mean / static_cast<double>(k);
    cdf += p;
    if (p == 0.0 && cdf < u) break;  // rounding tail
  }
  return total + k;
}

std::size_t Stream::categorical(std::span<const double> weights, double total) {
  const double target = uniform() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (target < acc) return i;
  }
  return weights.size() - 1;
}

std::uint64_t Stream::below(std::uint64_t n) {
  // Lemire's nearly divisionless method.
  __uint128_t m = static_cast<__uint128_t>(engine_()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = -n % n;
    while (low < threshold) {
      m = static_cast<__uint128_t>(engine_()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace levyconv
