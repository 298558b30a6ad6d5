#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "levyconv/path.hpp"
#include "levyconv/semigroup.hpp"

namespace levyconv {

/// Strictly increasing piecewise-linear bijection of [0, T] given by its nodes
/// (t_i, lambda(t_i)), with (0, 0) and (T, T) as the end nodes.
class TimeChange {
 public:
  TimeChange(std::vector<double> times, std::vector<double> images);

  static TimeChange identity(double horizon = 1.0);

  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<double>& images() const noexcept { return images_; }
  double horizon() const noexcept { return times_.back(); }

  double operator()(double t) const;
  TimeChange inverse() const { return TimeChange(images_, times_); }

 private:
  std::vector<double> times_;
  std::vector<double> images_;
};

/// sup_{s != t} |log((lambda(t) - lambda(s)) / (t - s))|, which for a
/// piecewise-linear map is the largest |log slope| over its segments.
double lambda_log_norm(const TimeChange& lambda);

/// sup_t ||x(t) - y(t)||.
double sup_distance(const PiecewiseConstPath& x, const PiecewiseConstPath& y);

/// sup_t ||x(t) - y(lambda(t))||, exact for step paths.
double sup_distance(const PiecewiseConstPath& x, const PiecewiseConstPath& y,
                    const TimeChange& lambda);

struct D0Bound {
  double bound = 0.0;       ///< max(log_norm, sup_term) of the witness
  TimeChange witness = TimeChange::identity();
  double log_norm = 0.0;
  double sup_term = 0.0;
};

struct D0Options {
  /// Upper limit on DP nodes (anchors times image candidates) per level.
  std::size_t max_cells = std::size_t{1} << 16;
};

/// Certified upper bound on the Skorokhod distance d0(x, y): the best
/// max(||lambda||_log, sup ||x - y o lambda||) over monotone piecewise-linear
/// time changes with nodes at 0, T and the jumps of x, whose images lie on the
/// dyadic lattice of order 1..g refined by the jump times of both paths. Each
/// level is a minimax dynamic program over increasing image sequences; the
/// identity map is always a candidate, so the result never exceeds
/// sup_distance. Throws ResourceError when the order-g program exceeds
/// max_cells nodes.
D0Bound d0_upper(const PiecewiseConstPath& x, const PiecewiseConstPath& y, unsigned grid_order,
                 const D0Options& options = {});

/// min(d0_upper(x, y), d0_upper(y, x)).
double d0_symmetrized(const PiecewiseConstPath& x, const PiecewiseConstPath& y,
                      unsigned grid_order, const D0Options& options = {});

/// Symmetric matrix of d0_symmetrized over all pairs (zero diagonal).
Matrix pairwise_d0(std::span<const PiecewiseConstPath> paths, unsigned grid_order,
                   const D0Options& options = {});

}  // namespace levyconv
