#include "levyconv/path.hpp"

#include <algorithm>
#include <cmath>

#include "levyconv/error.hpp"

namespace levyconv {

PiecewiseConstPath::PiecewiseConstPath(Vector initial, std::vector<double> jump_times,
                                       std::vector<Vector> values, double horizon)
    : initial_(std::move(initial)),
      jump_times_(std::move(jump_times)),
      values_(std::move(values)),
      horizon_(horizon) {
  if (!(horizon_ > 0.0) || !std::isfinite(horizon_)) {
    throw InvalidInput("path: horizon must be positive");
  }
  if (initial_.size() == 0) throw InvalidInput("path: values must have positive dimension");
  if (jump_times_.size() != values_.size()) {
    throw InvalidInput("path: one value per jump time is required");
  }
  double previous = 0.0;
  for (std::size_t k = 0; k < jump_times_.size(); ++k) {
    const double t = jump_times_[k];
    if (!(t > previous) || t > horizon_) {
      throw InvalidInput("path: jump times must be strictly increasing in (0, T]");
    }
    if (values_[k].size() != initial_.size()) throw InvalidInput("path: dimension mismatch");
    previous = t;
  }
}

PiecewiseConstPath PiecewiseConstPath::constant(Vector value, double horizon) {
  return PiecewiseConstPath(std::move(value), {}, {}, horizon);
}

PiecewiseConstPath PiecewiseConstPath::indicator(double from, double level, double horizon) {
  if (from <= 0.0) return constant(Vector::Constant(1, level), horizon);
  return PiecewiseConstPath(Vector::Zero(1), {from}, {Vector::Constant(1, level)}, horizon);
}

const Vector& PiecewiseConstPath::at(double t) const {
  if (t < 0.0 || t > horizon_) throw InvalidInput("path: evaluation time outside [0, T]");
  const auto k = static_cast<std::size_t>(
      std::upper_bound(jump_times_.begin(), jump_times_.end(), t) - jump_times_.begin());
  return piece(k);
}

double PiecewiseConstPath::max_jump() const {
  double best = 0.0;
  for (std::size_t k = 1; k <= jump_times_.size(); ++k) {
    best = std::max(best, (piece(k) - piece(k - 1)).norm());
  }
  return best;
}

PiecewiseConstPath PiecewiseConstPath::compressed() const {
  std::vector<double> times;
  std::vector<Vector> values;
  const Vector* last = &initial_;
  for (std::size_t k = 0; k < jump_times_.size(); ++k) {
    if (values_[k] != *last) {
      times.push_back(jump_times_[k]);
      values.push_back(values_[k]);
      last = &values_[k];
    }
  }
  return PiecewiseConstPath(initial_, std::move(times), std::move(values), horizon_);
}

}  // namespace levyconv
