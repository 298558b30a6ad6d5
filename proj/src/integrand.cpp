#include "levyconv/integrand.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "levyconv/error.hpp"

namespace levyconv {

StepIntegrand::StepIntegrand(std::vector<double> partition, std::vector<Matrix> blocks)
    : partition_(std::move(partition)), blocks_(std::move(blocks)) {
  if (partition_.size() < 2 || partition_.front() != 0.0) {
    throw InvalidInput("step integrand: partition must start at 0 and have at least one cell");
  }
  for (std::size_t j = 1; j < partition_.size(); ++j) {
    if (!(partition_[j] > partition_[j - 1])) {
      throw InvalidInput("step integrand: partition must be strictly increasing");
    }
  }
  if (blocks_.size() != partition_.size() - 1) {
    throw InvalidInput("step integrand: need one value block per partition cell");
  }
  for (const Matrix& b : blocks_) {
    if (b.rows() != blocks_.front().rows() || b.cols() != blocks_.front().cols() ||
        b.rows() == 0 || b.cols() == 0) {
      throw InvalidInput("step integrand: value blocks must share a nonempty d x |Z| shape");
    }
    if (!b.allFinite()) throw InvalidInput("step integrand: values must be finite");
  }
}

StepIntegrand StepIntegrand::constant(double horizon, Matrix block) {
  return StepIntegrand({0.0, horizon}, {std::move(block)});
}

std::optional<std::size_t> StepIntegrand::cell_of(double t) const {
  if (!(t > 0.0) || t > partition_.back()) return std::nullopt;
  // First partition point >= t closes the cell containing t.
  auto it = std::lower_bound(partition_.begin() + 1, partition_.end(), t);
  return static_cast<std::size_t>(it - partition_.begin()) - 1;
}

Vector StepIntegrand::value(double t, std::size_t z) const {
  if (z >= mark_count()) throw InvalidInput("step integrand: mark index out of range");
  const auto cell = cell_of(t);
  if (!cell) return Vector::Zero(static_cast<Eigen::Index>(dimension()));
  return blocks_[*cell].col(static_cast<Eigen::Index>(z));
}

Vector StepIntegrand::compensator_rate(std::size_t cell, const MarkSpace& space) const {
  if (space.size() != mark_count()) throw InvalidInput("step integrand: mark count mismatch");
  const Eigen::Map<const Vector> nu(space.weights().data(),
                                    static_cast<Eigen::Index>(space.size()));
  return blocks_.at(cell) * nu;
}

StepIntegrand StepIntegrand::mapped(const Matrix& m) const {
  std::vector<Matrix> blocks;
  blocks.reserve(blocks_.size());
  for (const Matrix& b : blocks_) blocks.emplace_back(m * b);
  return StepIntegrand(partition_, std::move(blocks));
}

StepIntegrand StepIntegrand::scaled(double c) const {
  std::vector<Matrix> blocks;
  blocks.reserve(blocks_.size());
  for (const Matrix& b : blocks_) blocks.emplace_back(c * b);
  return StepIntegrand(partition_, std::move(blocks));
}

SampledIntegrand::SampledIntegrand(std::vector<double> knots, std::vector<Matrix> samples)
    : knots_(std::move(knots)), samples_(std::move(samples)) {
  if (knots_.empty() || knots_.size() != samples_.size()) {
    throw InvalidInput("sampled integrand: need one sample block per knot");
  }
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (!(knots_[i] > knots_[i - 1])) {
      throw InvalidInput("sampled integrand: knots must be strictly increasing");
    }
  }
  for (const Matrix& s : samples_) {
    if (s.rows() != samples_.front().rows() || s.cols() != samples_.front().cols() ||
        s.size() == 0 || !s.allFinite()) {
      throw InvalidInput("sampled integrand: sample blocks must share a finite d x |Z| shape");
    }
  }
}

Vector SampledIntegrand::value(double t, std::size_t z) const {
  if (z >= mark_count()) throw InvalidInput("sampled integrand: mark index out of range");
  const auto col = static_cast<Eigen::Index>(z);
  if (t <= knots_.front()) return samples_.front().col(col);
  if (t >= knots_.back()) return samples_.back().col(col);
  auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
  const auto hi = static_cast<std::size_t>(it - knots_.begin());
  const std::size_t lo = hi - 1;
  const double w = (t - knots_[lo]) / (knots_[hi] - knots_[lo]);
  return (1.0 - w) * samples_[lo].col(col) + w * samples_[hi].col(col);
}

PredictableIntegrand PredictableIntegrand::jump_count(Matrix base, double decay) {
  if (base.size() == 0 || !base.allFinite()) {
    throw InvalidInput("jumpcount integrand: base block must be nonempty and finite");
  }
  if (!(decay >= 0.0)) throw InvalidInput("jumpcount integrand: decay must be nonnegative");
  PredictableIntegrand out;
  out.dimension = static_cast<std::size_t>(base.rows());
  out.mark_count = static_cast<std::size_t>(base.cols());
  out.constant_between_events = true;
  out.function = [base = std::move(base), decay](double, std::size_t z,
                                                 std::span<const Atom> history) -> Vector {
    return base.col(static_cast<Eigen::Index>(z)) /
           (1.0 + decay * static_cast<double>(history.size()));
  };
  return out;
}

Integrand::Integrand(StepIntegrand step) : kind_(std::move(step)) {}
Integrand::Integrand(SampledIntegrand sampled) : kind_(std::move(sampled)) {}
Integrand::Integrand(PredictableIntegrand predictable) : kind_(std::move(predictable)) {
  const auto& p = std::get<PredictableIntegrand>(kind_);
  if (!p.function || p.dimension == 0 || p.mark_count == 0) {
    throw InvalidInput("predictable integrand: function, dimension and mark count are required");
  }
}

Integrand::Integrand(Kind kind, std::optional<Matrix> transform, double scale)
    : kind_(std::move(kind)), transform_(std::move(transform)), scale_(scale) {}

Integrand Integrand::zero(std::size_t dimension, std::size_t mark_count) {
  return Integrand(StepIntegrand::constant(
      1.0, Matrix::Zero(static_cast<Eigen::Index>(dimension), static_cast<Eigen::Index>(mark_count))));
}

std::size_t Integrand::dimension() const noexcept {
  if (transform_) return static_cast<std::size_t>(transform_->rows());
  return std::visit(
      [](const auto& k) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(k)>, PredictableIntegrand>) {
          return k.dimension;
        } else {
          return k.dimension();
        }
      },
      kind_);
}

std::size_t Integrand::mark_count() const noexcept {
  return std::visit(
      [](const auto& k) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(k)>, PredictableIntegrand>) {
          return k.mark_count;
        } else {
          return k.mark_count();
        }
      },
      kind_);
}

Vector Integrand::raw_value(double t, std::size_t z, std::span<const Atom> history) const {
  if (const auto* step = std::get_if<StepIntegrand>(&kind_)) return step->value(t, z);
  if (const auto* sampled = std::get_if<SampledIntegrand>(&kind_)) return sampled->value(t, z);
  const auto& p = std::get<PredictableIntegrand>(kind_);
  if (z >= p.mark_count) throw InvalidInput("predictable integrand: mark index out of range");
  return p.function(t, z, history);
}

Vector Integrand::value(double t, std::size_t z, std::span<const Atom> history) const {
  Vector v = raw_value(t, z, history);
  if (transform_) v = *transform_ * v;
  if (scale_ != 1.0) v *= scale_;
  return v;
}

bool Integrand::piecewise_constant() const noexcept {
  if (std::holds_alternative<StepIntegrand>(kind_)) return true;
  if (const auto* p = std::get_if<PredictableIntegrand>(&kind_)) return p->constant_between_events;
  return false;
}

bool Integrand::deterministic() const noexcept {
  return !std::holds_alternative<PredictableIntegrand>(kind_);
}

std::vector<double> Integrand::breakpoints(double horizon) const {
  std::vector<double> points;
  auto keep = [&](const std::vector<double>& src) {
    for (double t : src) {
      if (t > 0.0 && t < horizon) points.push_back(t);
    }
  };
  if (const auto* step = std::get_if<StepIntegrand>(&kind_)) keep(step->partition());
  if (const auto* sampled = std::get_if<SampledIntegrand>(&kind_)) keep(sampled->knots());
  return points;
}

const StepIntegrand* Integrand::as_step() const noexcept {
  return (transform_ || scale_ != 1.0) ? nullptr : std::get_if<StepIntegrand>(&kind_);
}

Integrand Integrand::mapped(const Matrix& m) const {
  if (m.cols() != static_cast<Eigen::Index>(dimension())) {
    throw InvalidInput("integrand: map has the wrong number of columns");
  }
  return Integrand(kind_, transform_ ? Matrix(m * *transform_) : m, scale_);
}

Integrand Integrand::scaled(double c) const { return Integrand(kind_, transform_, scale_ * c); }

namespace {

// Five-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 5> kGaussNodes = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                               0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGaussWeights = {0.2369268850561891, 0.4786286704993665,
                                                 0.5688888888888889, 0.4786286704993665,
                                                 0.2369268850561891};

}  // namespace

double Integrand::lp_mass(const PrmRealization& eta, double p) const {
  if (!(p >= 1.0)) throw InvalidInput("lp_mass: p must be at least 1");
  const MarkSpace& space = eta.space();
  if (space.size() != mark_count()) throw InvalidInput("lp_mass: mark count mismatch");
  const double horizon = eta.horizon();

  auto rate_at = [&](double t) {
    const auto history = eta.before(t);
    double acc = 0.0;
    for (std::size_t z = 0; z < space.size(); ++z) {
      acc += space.weight(z) * std::pow(value(t, z, history).norm(), p);
    }
    return acc;
  };

  // Pieces on which xi is either constant or smooth.
  std::vector<double> cuts = breakpoints(horizon);
  for (const Atom& a : eta.atoms()) cuts.push_back(a.time);
  cuts.push_back(0.0);
  cuts.push_back(horizon);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const bool constant = piecewise_constant();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    if (constant) {
      total += (b - a) * rate_at(0.5 * (a + b));
      continue;
    }
    constexpr int kSub = 16;
    const double h = (b - a) / kSub;
    for (int s = 0; s < kSub; ++s) {
      const double mid = a + (s + 0.5) * h;
      for (std::size_t g = 0; g < kGaussNodes.size(); ++g) {
        total += 0.5 * h * kGaussWeights[g] * rate_at(mid + 0.5 * h * kGaussNodes[g]);
      }
    }
  }
  return total;
}

}  // namespace levyconv
