#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "levyconv/error.hpp"
#include "levyconv/integrand.hpp"
#include "levyconv/prm.hpp"
#include "levyconv/projections.hpp"
#include "levyconv/semigroup.hpp"

namespace levyconv {

/// Sampled cadlag path. Column i of `values` is the value at times[i] (the
/// right limit); column i of `left_limits` is the limit from the left, which
/// differs from the value only at jump nodes.
struct GridPath {
  std::vector<double> times;
  Matrix values;
  Matrix left_limits;

  std::size_t size() const noexcept { return times.size(); }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(values.rows()); }
  double horizon() const { return times.back(); }
  Vector value(std::size_t i) const { return values.col(static_cast<Eigen::Index>(i)); }
  Vector back() const { return values.col(values.cols() - 1); }
};

/// Uniform grid {k dt} on [0, T] together with T, the atom times and `extra`
/// (clipped to [0, T]); sorted with exact duplicates removed.
std::vector<double> event_grid(double horizon, double dt, std::span<const Atom> atoms,
                               std::span<const double> extra = {});

/// Compensated integral of a step process against eta, evaluated directly from
/// its jump-plus-linear-drift form on the nodes {0, partition, atoms, T}.
GridPath step_integral(const StepIntegrand& xi, const PrmRealization& eta);
/// Same, on the event grid of resolution dt.
GridPath step_integral(const StepIntegrand& xi, const PrmRealization& eta, double dt);
/// I(t) at a single time.
Vector step_integral_at(const StepIntegrand& xi, const PrmRealization& eta, double t);

/// Stochastic convolution u(t) = sum_{tau_k <= t} S(t - tau_k) xi(tau_k, z_k)
///   - int_0^t S(t - s) sum_z nu(z) xi(s, z) ds
/// on the event grid of resolution dt. Each eigenmode is advanced in closed
/// form between nodes; the compensator rate is taken at the cell midpoint,
/// which is exact for piecewise-constant integrands.
GridPath convolve(const GeneratorOp& op, const Integrand& xi, const PrmRealization& eta, double dt);

/// Convolution on caller-supplied nodes (strictly increasing, starting at 0,
/// containing every atom time and every integrand breakpoint for exactness).
GridPath convolve_on(const GeneratorOp& op, const Integrand& xi, const PrmRealization& eta,
                     std::span<const double> nodes);

/// (Phi_t xi)(s) = 1_{[0,t)}(s) S(t - s) xi(s), evaluated at cell midpoints.
/// `xi` stacks one d-block per mark; S acts on each block.
SampledFunction phi_apply(const GeneratorOp& op, const SampledFunction& xi, double t);

/// Drift b held constant on [times[i], times[i+1]) (the last piece runs to the horizon).
struct DriftPath {
  std::vector<double> times;
  std::vector<Vector> values;

  /// b sampled at cell midpoints of the uniform grid of step dt on [0, T].
  template <typename Fn>
  static DriftPath sample(double horizon, double dt, Fn&& b);
  static DriftPath constant(Vector value);
};

/// v(t) = int_0^t S(t - s) b(s) ds on the uniform grid of step dt.
GridPath drift_convolve(const GeneratorOp& op, const DriftPath& b, double horizon, double dt);
GridPath drift_convolve_on(const GeneratorOp& op, const DriftPath& b, std::span<const double> nodes);

/// Mild solution of du + Au dt = b dt + int xi d(eta - gamma): drift plus
/// stochastic convolution on the event grid.
GridPath solve_spde(const GeneratorOp& op, const DriftPath& b, const Integrand& xi,
                    const PrmRealization& eta, double dt);

/// max_t || A^{-1} u(t) - int_0^t u ds - I(A^{-1} xi)(t) || over the nodes,
/// with the time integral by the trapezoid rule using left limits at jumps.
double strong_identity_residual(const GeneratorOp& op, const Integrand& xi,
                                const PrmRealization& eta, double dt);

template <typename Fn>
DriftPath DriftPath::sample(double horizon, double dt, Fn&& b) {
  if (!(dt > 0.0) || !(horizon > 0.0)) throw InvalidInput("drift: need dt > 0 and T > 0");
  DriftPath out;
  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * dt;
    if (t >= horizon) break;
    out.times.push_back(t);
    out.values.push_back(b(std::min(t + 0.5 * dt, 0.5 * (t + horizon))));
  }
  return out;
}

}  // namespace levyconv
