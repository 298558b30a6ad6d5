#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "levyconv/rng.hpp"

namespace levyconv {

/// Indices into a MarkSpace.
using MarkSubset = std::vector<std::size_t>;

/// Finite mark space Z with intensity measure nu given by per-mark weights.
/// Copies share the immutable underlying data.
class MarkSpace {
 public:
  MarkSpace();
  MarkSpace(std::vector<std::string> marks, std::vector<double> weights);

  std::size_t size() const noexcept { return data_->weights.size(); }
  bool empty() const noexcept { return size() == 0; }
  const std::vector<std::string>& marks() const noexcept { return data_->marks; }
  const std::vector<double>& weights() const noexcept { return data_->weights; }
  double weight(std::size_t z) const { return data_->weights.at(z); }
  double total_mass() const noexcept { return data_->total_mass; }

  /// nu(U). Throws InvalidInput for an out-of-range index.
  double mass(const MarkSubset& subset) const;

  /// Every mark index, in order.
  MarkSubset all() const;

  /// Same marks with every weight multiplied by `factor`.
  MarkSpace scaled(double factor) const;

  bool operator==(const MarkSpace& other) const;

 private:
  struct Data {
    std::vector<std::string> marks;
    std::vector<double> weights;
    double total_mass = 0.0;
  };
  std::shared_ptr<const Data> data_;
};

struct Atom {
  double time;
  std::size_t mark;
};

/// A realized point measure on (0, T] x Z: atoms sorted by time, ties kept in
/// generation order.
class PrmRealization {
 public:
  PrmRealization(MarkSpace space, double horizon, std::vector<Atom> atoms);

  double horizon() const noexcept { return horizon_; }
  const MarkSpace& space() const noexcept { return space_; }
  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }

  /// Atoms with time strictly less than t.
  std::span<const Atom> before(double t) const;

  /// Copy with atoms at times >= t replaced by `tail` (used to probe
  /// predictability).
  PrmRealization with_tail(double t, std::vector<Atom> tail) const;

 private:
  MarkSpace space_;
  double horizon_;
  std::vector<Atom> atoms_;
};

/// Exponential inter-arrivals at rate nu(Z), marks with probability nu(z)/nu(Z).
PrmRealization simulate_prm_exponential(const MarkSpace& space, double horizon, Stream& stream);
PrmRealization simulate_prm_exponential(const MarkSpace& space, double horizon, std::uint64_t seed);

/// N ~ Poisson(T nu(Z)), then N sorted uniform times and independent marks.
PrmRealization simulate_prm_binomial(const MarkSpace& space, double horizon, Stream& stream);
PrmRealization simulate_prm_binomial(const MarkSpace& space, double horizon, std::uint64_t seed);

enum class Construction { kExponential, kBinomial };

PrmRealization simulate_prm(Construction construction, const MarkSpace& space, double horizon,
                            Stream& stream);

/// eta((a, b] x U).
std::size_t count(const PrmRealization& eta, double a, double b, const MarkSubset& subset);

/// gamma((a, b] x U) = (b - a) nu(U).
double compensator(const MarkSpace& space, double a, double b, const MarkSubset& subset);

}  // namespace levyconv
