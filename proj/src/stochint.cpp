#include "levyconv/stochint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "levyconv/error.hpp"

namespace levyconv {

namespace {

constexpr double kMaxNodes = 5e7;

// int_0^h e^{-mu (h - s)} ds.
double decay_integral(double mu, double h) {
  return mu == 0.0 ? h : -std::expm1(-mu * h) / mu;
}

void check_nodes(std::span<const double> nodes, double horizon) {
  if (nodes.empty() || nodes.front() != 0.0) throw InvalidInput("nodes must start at 0");
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (!(nodes[i] > nodes[i - 1])) throw InvalidInput("nodes must be strictly increasing");
  }
  if (nodes.back() > horizon) throw InvalidInput("nodes extend beyond the horizon");
}

Vector rate_at(const Integrand& xi, const PrmRealization& eta, double t) {
  const MarkSpace& space = eta.space();
  const auto history = eta.before(t);
  Vector rate = Vector::Zero(static_cast<Eigen::Index>(xi.dimension()));
  for (std::size_t z = 0; z < space.size(); ++z) {
    rate += space.weight(z) * xi.value(t, z, history);
  }
  return rate;
}

GridPath make_path(std::span<const double> nodes, std::size_t dimension) {
  GridPath path;
  path.times.assign(nodes.begin(), nodes.end());
  const auto n = static_cast<Eigen::Index>(nodes.size());
  path.values = Matrix::Zero(static_cast<Eigen::Index>(dimension), n);
  path.left_limits = Matrix::Zero(static_cast<Eigen::Index>(dimension), n);
  return path;
}

void check_step(const StepIntegrand& xi, const PrmRealization& eta) {
  if (xi.partition().back() > eta.horizon()) {
    throw InvalidInput("step integrand partition exceeds the horizon");
  }
  if (xi.mark_count() != eta.space().size()) {
    throw InvalidInput("step integrand has " + std::to_string(xi.mark_count()) +
                       " marks, realization has " + std::to_string(eta.space().size()));
  }
}

}  // namespace

std::vector<double> event_grid(double horizon, double dt, std::span<const Atom> atoms,
                               std::span<const double> extra) {
  if (!(horizon > 0.0)) throw InvalidInput("event grid: horizon must be positive");
  if (!(dt > 0.0)) throw InvalidInput("event grid: grid step must be positive");
  if (horizon / dt > kMaxNodes) throw InvalidInput("event grid: grid step too small");
  std::vector<double> nodes;
  nodes.reserve(static_cast<std::size_t>(horizon / dt) + atoms.size() + extra.size() + 2);
  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * dt;
    if (t >= horizon) break;
    nodes.push_back(t);
  }
  nodes.push_back(horizon);
  for (const Atom& a : atoms) {
    if (a.time > horizon) throw InvalidInput("event grid: atom beyond the horizon");
    nodes.push_back(a.time);
  }
  for (double t : extra) {
    if (t > 0.0 && t < horizon) nodes.push_back(t);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

namespace {

GridPath step_integral_on(const StepIntegrand& xi, const PrmRealization& eta,
                          std::span<const double> nodes) {
  check_step(xi, eta);
  check_nodes(nodes, eta.horizon());
  const auto& partition = xi.partition();
  std::vector<Vector> rates;
  rates.reserve(xi.cell_count());
  for (std::size_t j = 0; j < xi.cell_count(); ++j) rates.push_back(xi.compensator_rate(j, eta.space()));

  GridPath path = make_path(nodes, xi.dimension());
  const auto atoms = eta.atoms();
  std::size_t next_atom = 0;
  Vector jumps = Vector::Zero(static_cast<Eigen::Index>(xi.dimension()));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double t = nodes[i];
    Vector at_t = Vector::Zero(jumps.size());
    while (next_atom < atoms.size() && atoms[next_atom].time <= t) {
      at_t += xi.value(atoms[next_atom].time, atoms[next_atom].mark);
      ++next_atom;
    }
    jumps += at_t;
    Vector drift = Vector::Zero(jumps.size());
    for (std::size_t j = 0; j < rates.size(); ++j) {
      const double lo = std::min(partition[j], t);
      const double hi = std::min(partition[j + 1], t);
      drift += (hi - lo) * rates[j];
    }
    const auto col = static_cast<Eigen::Index>(i);
    path.values.col(col) = jumps - drift;
    path.left_limits.col(col) = path.values.col(col) - at_t;
  }
  return path;
}

}  // namespace

GridPath step_integral(const StepIntegrand& xi, const PrmRealization& eta) {
  check_step(xi, eta);
  std::vector<double> nodes{0.0, eta.horizon()};
  for (double t : xi.partition()) nodes.push_back(t);
  for (const Atom& a : eta.atoms()) nodes.push_back(a.time);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return step_integral_on(xi, eta, nodes);
}

GridPath step_integral(const StepIntegrand& xi, const PrmRealization& eta, double dt) {
  check_step(xi, eta);
  return step_integral_on(xi, eta, event_grid(eta.horizon(), dt, eta.atoms(), xi.partition()));
}

Vector step_integral_at(const StepIntegrand& xi, const PrmRealization& eta, double t) {
  if (!(t >= 0.0) || t > eta.horizon()) throw InvalidInput("step_integral_at: t outside [0, T]");
  const std::vector<double> nodes = t > 0.0 ? std::vector<double>{0.0, t} : std::vector<double>{0.0};
  return step_integral_on(xi, eta, nodes).back();
}

GridPath convolve_on(const GeneratorOp& op, const Integrand& xi, const PrmRealization& eta,
                     std::span<const double> nodes) {
  if (xi.dimension() != op.dimension()) {
    throw InvalidInput("convolve: integrand dimension " + std::to_string(xi.dimension()) +
                       " does not match generator dimension " + std::to_string(op.dimension()));
  }
  if (xi.mark_count() != eta.space().size()) throw InvalidInput("convolve: mark count mismatch");
  check_nodes(nodes, eta.horizon());

  const Vector& mu = op.eigenvalues();
  const auto atoms = eta.atoms();
  GridPath path = make_path(nodes, op.dimension());
  Vector w = Vector::Zero(mu.size());
  std::size_t next_atom = 0;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const double t0 = nodes[i - 1];
    const double t1 = nodes[i];
    if (next_atom < atoms.size() && atoms[next_atom].time < t1) {
      throw InvalidInput("convolve: atom at " + std::to_string(atoms[next_atom].time) +
                         " is not a node");
    }
    const double h = t1 - t0;
    const Vector rate = op.to_modal(rate_at(xi, eta, t0 + 0.5 * h));
    for (Eigen::Index k = 0; k < mu.size(); ++k) {
      w(k) = std::exp(-mu(k) * h) * w(k) - decay_integral(mu(k), h) * rate(k);
    }
    const auto col = static_cast<Eigen::Index>(i);
    path.left_limits.col(col) = op.from_modal(w);
    if (next_atom < atoms.size() && atoms[next_atom].time == t1) {
      const auto history = eta.before(t1);
      Vector jump = Vector::Zero(mu.size());
      while (next_atom < atoms.size() && atoms[next_atom].time == t1) {
        jump += xi.value(t1, atoms[next_atom].mark, history);
        ++next_atom;
      }
      w += op.to_modal(jump);
      path.values.col(col) = op.from_modal(w);
    } else {
      path.values.col(col) = path.left_limits.col(col);
    }
  }
  return path;
}

GridPath convolve(const GeneratorOp& op, const Integrand& xi, const PrmRealization& eta, double dt) {
  const std::vector<double> extra = xi.breakpoints(eta.horizon());
  return convolve_on(op, xi, eta, event_grid(eta.horizon(), dt, eta.atoms(), extra));
}

SampledFunction phi_apply(const GeneratorOp& op, const SampledFunction& xi, double t) {
  if (!(t >= 0.0) || t > 1.0) throw InvalidInput("phi_apply: t must lie in [0, 1]");
  const auto d = static_cast<Eigen::Index>(op.dimension());
  if (d == 0 || xi.values().rows() % d != 0) {
    throw InvalidInput("phi_apply: sample dimension is not a multiple of the generator dimension");
  }
  const Eigen::Index blocks = xi.values().rows() / d;
  Matrix out = Matrix::Zero(xi.values().rows(), xi.values().cols());
  for (Eigen::Index i = 0; i < xi.values().cols(); ++i) {
    const double s = xi.midpoint(static_cast<std::size_t>(i));
    if (!(s < t)) continue;
    for (Eigen::Index b = 0; b < blocks; ++b) {
      out.block(b * d, i, d, 1) = op.apply_S(t - s, xi.values().block(b * d, i, d, 1));
    }
  }
  return SampledFunction(xi.order(), std::move(out));
}

DriftPath DriftPath::constant(Vector value) { return DriftPath{{0.0}, {std::move(value)}}; }

GridPath drift_convolve_on(const GeneratorOp& op, const DriftPath& b, std::span<const double> nodes) {
  if (b.times.empty() || b.times.size() != b.values.size()) {
    throw InvalidInput("drift: empty or inconsistent sample");
  }
  if (b.times.front() != 0.0) throw InvalidInput("drift: samples must start at 0");
  for (std::size_t k = 1; k < b.times.size(); ++k) {
    if (!(b.times[k] > b.times[k - 1])) throw InvalidInput("drift: sample times must increase");
  }
  std::vector<Vector> modal;
  modal.reserve(b.values.size());
  for (const Vector& v : b.values) modal.push_back(op.to_modal(v));
  check_nodes(nodes, std::numeric_limits<double>::infinity());

  const Vector& mu = op.eigenvalues();
  GridPath path = make_path(nodes, op.dimension());
  Vector w = Vector::Zero(mu.size());
  double now = 0.0;
  std::size_t piece = 0;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    while (now < nodes[i]) {
      while (piece + 1 < b.times.size() && b.times[piece + 1] <= now) ++piece;
      const double end =
          piece + 1 < b.times.size() ? std::min(nodes[i], b.times[piece + 1]) : nodes[i];
      const double h = end - now;
      for (Eigen::Index k = 0; k < mu.size(); ++k) {
        w(k) = std::exp(-mu(k) * h) * w(k) + decay_integral(mu(k), h) * modal[piece](k);
      }
      now = end;
    }
    const auto col = static_cast<Eigen::Index>(i);
    path.values.col(col) = op.from_modal(w);
  }
  path.left_limits = path.values;
  return path;
}

GridPath drift_convolve(const GeneratorOp& op, const DriftPath& b, double horizon, double dt) {
  return drift_convolve_on(op, b, event_grid(horizon, dt, {}));
}

GridPath solve_spde(const GeneratorOp& op, const DriftPath& b, const Integrand& xi,
                    const PrmRealization& eta, double dt) {
  const std::vector<double> extra = xi.breakpoints(eta.horizon());
  const std::vector<double> nodes = event_grid(eta.horizon(), dt, eta.atoms(), extra);
  GridPath u = convolve_on(op, xi, eta, nodes);
  const GridPath v = drift_convolve_on(op, b, nodes);
  u.values += v.values;
  u.left_limits += v.values;
  return u;
}

double strong_identity_residual(const GeneratorOp& op, const Integrand& xi,
                                const PrmRealization& eta, double dt) {
  if (!op.invertible()) throw SingularityError("strong identity: generator is not invertible");
  const GridPath u = convolve(op, xi, eta, dt);
  const Matrix inverse = op.power_matrix(-1.0);
  const GridPath noise =
      convolve_on(GeneratorOp::zero(op.dimension()), xi.mapped(inverse), eta, u.times);
  Vector integral = Vector::Zero(static_cast<Eigen::Index>(op.dimension()));
  double worst = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto col = static_cast<Eigen::Index>(i);
    if (i > 0) {
      integral += 0.5 * (u.times[i] - u.times[i - 1]) * (u.values.col(col - 1) + u.left_limits.col(col));
    }
    const Vector residual = inverse * u.values.col(col) + integral - noise.values.col(col);
    worst = std::max(worst, residual.norm());
  }
  return worst;
}

}  // namespace levyconv
