#include "levyconv/projections.hpp"

#include <cmath>
#include <string>

#include "levyconv/error.hpp"

namespace levyconv {

namespace {

constexpr unsigned kMaxOrder = 26;

void check_order(unsigned n, const SampledFunction& f) {
  if (n > f.order()) {
    throw ResolutionError("projection order " + std::to_string(n) + " exceeds sample order " +
                          std::to_string(f.order()));
  }
}

}  // namespace

SampledFunction::SampledFunction(unsigned order, Matrix values)
    : order_(order), values_(std::move(values)) {
  if (order_ > kMaxOrder) throw InvalidInput("sampled function: order too large");
  if (values_.cols() != (Eigen::Index{1} << order_) || values_.rows() == 0) {
    throw InvalidInput("sampled function: need dimension x 2^order values");
  }
}

SampledFunction SampledFunction::from_function(unsigned order, std::size_t dimension,
                                               const std::function<Vector(double)>& f) {
  if (order > kMaxOrder) throw InvalidInput("sampled function: order too large");
  const Eigen::Index cells = Eigen::Index{1} << order;
  Matrix values(static_cast<Eigen::Index>(dimension), cells);
  const double h = 1.0 / static_cast<double>(cells);
  for (Eigen::Index i = 0; i < cells; ++i) {
    values.col(i) = f((static_cast<double>(i) + 0.5) * h);
  }
  return SampledFunction(order, std::move(values));
}

SampledFunction SampledFunction::zero(unsigned order, std::size_t dimension) {
  return SampledFunction(order,
                         Matrix::Zero(static_cast<Eigen::Index>(dimension), Eigen::Index{1} << order));
}

ValueNorm ValueNorm::marks(std::size_t block, std::vector<double> weights, double p) {
  if (block == 0 || weights.empty()) throw InvalidInput("value norm: empty block layout");
  if (!(p >= 1.0)) throw InvalidInput("value norm: p must be at least 1");
  return ValueNorm{block, std::move(weights), p};
}

double ValueNorm::operator()(const Vector& y) const {
  if (block == 0) return y.norm();
  if (static_cast<std::size_t>(y.size()) != block * weights.size()) {
    throw InvalidInput("value norm: vector does not match the block layout");
  }
  double acc = 0.0;
  for (std::size_t z = 0; z < weights.size(); ++z) {
    acc += weights[z] * std::pow(y.segment(static_cast<Eigen::Index>(z * block),
                                           static_cast<Eigen::Index>(block)).norm(),
                                 p);
  }
  return std::pow(acc, 1.0 / p);
}

double lp_norm(const SampledFunction& f, double p, const ValueNorm& norm) {
  if (!(p >= 1.0)) throw InvalidInput("lp_norm: p must be at least 1");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < f.values().cols(); ++i) {
    acc += std::pow(norm(f.values().col(i)), p);
  }
  return std::pow(acc * f.cell_width(), 1.0 / p);
}

Vector cell_average(unsigned n, std::size_t j, const SampledFunction& f) {
  check_order(n, f);
  const std::size_t count = std::size_t{1} << n;
  if (j < 1 || j > count) {
    throw InvalidInput("cell_average: index " + std::to_string(j) + " outside 1.." +
                       std::to_string(count));
  }
  const auto per_cell = static_cast<Eigen::Index>(std::size_t{1} << (f.order() - n));
  const auto start = static_cast<Eigen::Index>(j - 1) * per_cell;
  const auto block = f.values().middleCols(start, per_cell);
  Vector avg = block.rowwise().mean();
  // Keep rows that are constant on the cell bit-exact, so projecting twice changes nothing.
  for (Eigen::Index r = 0; r < block.rows(); ++r) {
    if ((block.row(r).array() == block(r, 0)).all()) avg(r) = block(r, 0);
  }
  return avg;
}

SampledFunction haar_project(unsigned n, const SampledFunction& f) {
  check_order(n, f);
  const auto per_cell = static_cast<Eigen::Index>(std::size_t{1} << (f.order() - n));
  Matrix out(f.values().rows(), f.values().cols());
  for (std::size_t j = 1; j <= (std::size_t{1} << n); ++j) {
    const Vector avg = cell_average(n, j, f);
    out.middleCols(static_cast<Eigen::Index>(j - 1) * per_cell, per_cell).colwise() = avg;
  }
  return SampledFunction(f.order(), std::move(out));
}

SampledFunction shifted_haar_project(unsigned n, const SampledFunction& f,
                                     ShiftConvention convention) {
  check_order(n, f);
  const std::size_t count = std::size_t{1} << n;
  const std::size_t lag = convention == ShiftConvention::kByOne ? 1 : 2;
  const auto per_cell = static_cast<Eigen::Index>(std::size_t{1} << (f.order() - n));
  Matrix out = Matrix::Zero(f.values().rows(), f.values().cols());
  for (std::size_t j = lag + 1; j <= count; ++j) {
    out.middleCols(static_cast<Eigen::Index>(j - 1) * per_cell, per_cell).colwise() =
        cell_average(n, j - lag, f);
  }
  return SampledFunction(f.order(), std::move(out));
}

SampledFunction delay(unsigned n, const SampledFunction& f) {
  check_order(n, f);
  const auto shift = static_cast<Eigen::Index>(std::size_t{1} << (f.order() - n));
  const Eigen::Index cells = f.values().cols();
  Matrix out = Matrix::Zero(f.values().rows(), cells);
  out.rightCols(cells - shift) = f.values().leftCols(cells - shift);
  return SampledFunction(f.order(), std::move(out));
}

PiecewiseConstPath dyadic_project(unsigned n, const PiecewiseConstPath& x) {
  if (n > kMaxOrder) throw InvalidInput("dyadic_project: order too large");
  const double horizon = x.horizon();
  const std::size_t count = std::size_t{1} << n;
  std::vector<double> times;
  std::vector<Vector> values;
  Vector last = x.initial();
  auto push = [&](double t, const Vector& v) {
    if (v != last) {
      times.push_back(t);
      values.push_back(v);
      last = v;
    }
  };
  for (std::size_t i = 1; i < count; ++i) {
    const double t = horizon * static_cast<double>(i) / static_cast<double>(count);
    push(t, x.at(t));
  }
  push(horizon, x.at(horizon));
  return PiecewiseConstPath(x.initial(), std::move(times), std::move(values), horizon);
}

}  // namespace levyconv
