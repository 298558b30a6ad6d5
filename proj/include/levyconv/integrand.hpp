#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "levyconv/prm.hpp"
#include "levyconv/semigroup.hpp"

namespace levyconv {

/// Step process xi(t, z) = block_j.col(z) for t in (t_{j-1}, t_j], zero after t_n.
/// Each block is d x |Z|.
class StepIntegrand {
 public:
  StepIntegrand(std::vector<double> partition, std::vector<Matrix> blocks);

  /// One cell (0, horizon] with the given block.
  static StepIntegrand constant(double horizon, Matrix block);

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(blocks_.front().rows()); }
  std::size_t mark_count() const noexcept { return static_cast<std::size_t>(blocks_.front().cols()); }
  const std::vector<double>& partition() const noexcept { return partition_; }
  const std::vector<Matrix>& blocks() const noexcept { return blocks_; }
  std::size_t cell_count() const noexcept { return blocks_.size(); }

  /// Cell j (0-based) with t in (t_j, t_{j+1}], or nullopt when xi(t) = 0.
  std::optional<std::size_t> cell_of(double t) const;

  Vector value(double t, std::size_t z) const;

  /// sum_z nu(z) xi_j(z) for cell j.
  Vector compensator_rate(std::size_t cell, const MarkSpace& space) const;

  StepIntegrand mapped(const Matrix& m) const;
  StepIntegrand scaled(double c) const;

 private:
  std::vector<double> partition_;
  std::vector<Matrix> blocks_;
};

/// Deterministic integrand given by samples at increasing knot times and linear
/// interpolation in t (held constant outside the knot range).
class SampledIntegrand {
 public:
  SampledIntegrand(std::vector<double> knots, std::vector<Matrix> samples);

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(samples_.front().rows()); }
  std::size_t mark_count() const noexcept { return static_cast<std::size_t>(samples_.front().cols()); }
  const std::vector<double>& knots() const noexcept { return knots_; }

  Vector value(double t, std::size_t z) const;

 private:
  std::vector<double> knots_;
  std::vector<Matrix> samples_;
};

/// xi(t, z, history) where history holds the atoms strictly before t.
struct PredictableIntegrand {
  using Function = std::function<Vector(double, std::size_t, std::span<const Atom>)>;

  Function function;
  std::size_t dimension = 0;
  std::size_t mark_count = 0;
  /// True when the value only changes at atom times (then compensators are
  /// evaluated exactly between events).
  bool constant_between_events = false;

  /// xi(t, z) = base.col(z) / (1 + decay * eta((0, t) x Z)).
  static PredictableIntegrand jump_count(Matrix base, double decay);
};

/// Integrand for the compensated integral and the stochastic convolution: a
/// step process, a deterministic sampled function, or a predictable functional
/// of the realization's strict past. Outputs can be post-multiplied by a fixed
/// matrix and scalar.
class Integrand {
 public:
  Integrand(StepIntegrand step);
  Integrand(SampledIntegrand sampled);
  Integrand(PredictableIntegrand predictable);

  static Integrand zero(std::size_t dimension, std::size_t mark_count);

  std::size_t dimension() const noexcept;
  std::size_t mark_count() const noexcept;

  /// xi(t, z); `history` must be the atoms strictly before t.
  Vector value(double t, std::size_t z, std::span<const Atom> history) const;

  /// True when xi is constant in t on every interval free of atoms and breakpoints.
  bool piecewise_constant() const noexcept;

  /// True when xi does not read the realization.
  bool deterministic() const noexcept;

  /// Times in (0, horizon) where a deterministic piece changes.
  std::vector<double> breakpoints(double horizon) const;

  const StepIntegrand* as_step() const noexcept;

  /// x -> m x applied to every value.
  Integrand mapped(const Matrix& m) const;
  Integrand scaled(double c) const;

  /// int_0^T int_Z ||xi(t, z)||^p nu(dz) dt along the realization `eta`.
  double lp_mass(const PrmRealization& eta, double p) const;

 private:
  using Kind = std::variant<StepIntegrand, SampledIntegrand, PredictableIntegrand>;
  Integrand(Kind kind, std::optional<Matrix> transform, double scale);

  Vector raw_value(double t, std::size_t z, std::span<const Atom> history) const;

  Kind kind_;
  std::optional<Matrix> transform_;
  double scale_ = 1.0;
};

}  // namespace levyconv
