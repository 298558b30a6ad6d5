#pragma once

#include <cstddef>
#include <vector>

#include "levyconv/semigroup.hpp"

namespace levyconv {

/// Right-continuous step path on [0, T]: `initial` on [0, tau_1), values[k] on
/// [tau_{k+1}, tau_{k+2}), jump times strictly increasing in (0, T].
class PiecewiseConstPath {
 public:
  PiecewiseConstPath(Vector initial, std::vector<double> jump_times, std::vector<Vector> values,
                     double horizon = 1.0);

  static PiecewiseConstPath constant(Vector value, double horizon = 1.0);
  /// Scalar path equal to `level` on [from, T] and 0 before.
  static PiecewiseConstPath indicator(double from, double level = 1.0, double horizon = 1.0);

  double horizon() const noexcept { return horizon_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(initial_.size()); }
  std::size_t jump_count() const noexcept { return jump_times_.size(); }
  const Vector& initial() const noexcept { return initial_; }
  const std::vector<double>& jump_times() const noexcept { return jump_times_; }
  const std::vector<Vector>& values() const noexcept { return values_; }

  /// Value after the first k jumps (k = 0 gives the initial value).
  const Vector& piece(std::size_t k) const { return k == 0 ? initial_ : values_.at(k - 1); }

  /// x(t) for t in [0, T].
  const Vector& at(double t) const;

  /// Largest jump norm, 0 for a constant path.
  double max_jump() const;

  /// Same path with consecutive equal values merged.
  PiecewiseConstPath compressed() const;

 private:
  Vector initial_;
  std::vector<double> jump_times_;
  std::vector<Vector> values_;
  double horizon_;
};

}  // namespace levyconv
