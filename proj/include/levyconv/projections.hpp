#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "levyconv/path.hpp"
#include "levyconv/semigroup.hpp"

namespace levyconv {

/// Function on [0, 1] sampled on the 2^order uniform cells ((i-1) 2^-m, i 2^-m];
/// column i of `values` holds the value on cell i + 1. Values may stack per-mark
/// blocks for L^p(Z, nu; E)-valued functions.
class SampledFunction {
 public:
  SampledFunction(unsigned order, Matrix values);

  /// Samples f at cell midpoints, which makes cell means exact for affine f.
  static SampledFunction from_function(unsigned order, std::size_t dimension,
                                       const std::function<Vector(double)>& f);
  static SampledFunction zero(unsigned order, std::size_t dimension);

  unsigned order() const noexcept { return order_; }
  std::size_t cells() const noexcept { return static_cast<std::size_t>(values_.cols()); }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(values_.rows()); }
  double cell_width() const noexcept { return 1.0 / static_cast<double>(cells()); }
  double midpoint(std::size_t i) const noexcept { return (static_cast<double>(i) + 0.5) * cell_width(); }
  const Matrix& values() const noexcept { return values_; }
  Matrix& values() noexcept { return values_; }

 private:
  unsigned order_;
  Matrix values_;
};

/// Norm on the value space: Euclidean, or for stacked per-mark blocks of size
/// `block` the L^p(Z, nu; R^block) norm (sum_z nu_z |y_z|^p)^{1/p}.
struct ValueNorm {
  std::size_t block = 0;
  std::vector<double> weights;
  double p = 2.0;

  static ValueNorm euclidean() { return {}; }
  static ValueNorm marks(std::size_t block, std::vector<double> weights, double p);

  double operator()(const Vector& y) const;
};

/// (int_0^1 |f(s)|^p ds)^{1/p}.
double lp_norm(const SampledFunction& f, double p, const ValueNorm& norm = ValueNorm::euclidean());

/// Mean of f over ((j-1) 2^-n, j 2^-n], j = 1..2^n.
Vector cell_average(unsigned n, std::size_t j, const SampledFunction& f);

/// Conditional expectation onto functions constant on order-n dyadic cells.
SampledFunction haar_project(unsigned n, const SampledFunction& f);

/// Placement of cell averages in the shifted projection.
enum class ShiftConvention {
  kByOne,  ///< cell j+1 receives the average of cell j; first cell 0
  kByTwo,  ///< cell j+1 receives the average of cell j-1; first two cells 0
};

/// Adapted Haar projection: each order-n cell carries the average of an earlier cell.
SampledFunction shifted_haar_project(unsigned n, const SampledFunction& f,
                                     ShiftConvention convention = ShiftConvention::kByOne);

/// Delay by one order-n cell with zero on the first cell.
SampledFunction delay(unsigned n, const SampledFunction& f);

/// (pi_n x)(t) = x(T 2^-n floor(2^n t / T)) for t < T and x(T) at t = T.
PiecewiseConstPath dyadic_project(unsigned n, const PiecewiseConstPath& x);

}  // namespace levyconv
