#include "levyconv/skorokhod.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "levyconv/error.hpp"
#include "levyconv/parallel.hpp"

namespace levyconv {

namespace {

constexpr unsigned kMaxGridOrder = 30;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_horizons(const PiecewiseConstPath& x, const PiecewiseConstPath& y) {
  if (x.horizon() != y.horizon()) throw InvalidInput("paths have different horizons");
  if (x.dimension() != y.dimension()) throw InvalidInput("paths have different dimensions");
}

// Segment-wise sup of ||x(t) - y(lambda(t))|| for step paths, using the
// precomputed norms of all piece differences.
class SegmentCost {
 public:
  SegmentCost(const PiecewiseConstPath& x, const PiecewiseConstPath& y)
      : xj_(x.jump_times()), yj_(y.jump_times()) {
    diff_.resize(static_cast<Eigen::Index>(xj_.size() + 1), static_cast<Eigen::Index>(yj_.size() + 1));
    for (std::size_t i = 0; i <= xj_.size(); ++i) {
      for (std::size_t j = 0; j <= yj_.size(); ++j) {
        diff_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            (x.piece(i) - y.piece(j)).norm();
      }
    }
  }

  // Linear segment (a, b) -> (a2, b2) on t in [a, a2), or [a, a2] when `closed`.
  // Returns as soon as the running maximum reaches `cap`.
  double operator()(double a, double b, double a2, double b2, bool closed, double cap) const {
    std::size_t ix = count_le(xj_, a);
    std::size_t iy = count_le(yj_, b);
    const std::size_t x_end = count_lt(xj_, a2);
    const std::size_t y_end = count_lt(yj_, b2);
    double best = at(ix, iy);
    if (best >= cap) return best;
    const double inv_slope = (a2 - a) / (b2 - b);
    auto y_time = [&](std::size_t k) { return a + (yj_[k] - b) * inv_slope; };
    while (ix < x_end || iy < y_end) {
      const double tx = ix < x_end ? xj_[ix] : kInf;
      const double ty = iy < y_end ? y_time(iy) : kInf;
      const double t = std::min(tx, ty);
      while (ix < x_end && xj_[ix] <= t) ++ix;
      while (iy < y_end && y_time(iy) <= t) ++iy;
      best = std::max(best, at(ix, iy));
      if (best >= cap) return best;
    }
    if (closed) best = std::max(best, at(count_le(xj_, a2), count_le(yj_, b2)));
    return best;
  }

 private:
  static std::size_t count_le(const std::vector<double>& v, double t) {
    return static_cast<std::size_t>(std::upper_bound(v.begin(), v.end(), t) - v.begin());
  }
  static std::size_t count_lt(const std::vector<double>& v, double t) {
    return static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), t) - v.begin());
  }
  double at(std::size_t i, std::size_t j) const {
    return diff_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  const std::vector<double>& xj_;
  const std::vector<double>& yj_;
  Matrix diff_;
};

// Images allowed at level `level`: the full dyadic lattice of [0, T] plus the
// jump times of both paths, so jumps can be aligned exactly.
std::vector<double> lattice_candidates(const PiecewiseConstPath& x, const PiecewiseConstPath& y,
                                       unsigned level) {
  const double horizon = x.horizon();
  const std::size_t cells = std::size_t{1} << level;
  std::vector<double> out;
  out.reserve(cells + 1 + x.jump_count() + y.jump_count());
  for (std::size_t k = 0; k <= cells; ++k) {
    out.push_back(horizon * static_cast<double>(k) / static_cast<double>(cells));
  }
  out.insert(out.end(), x.jump_times().begin(), x.jump_times().end());
  out.insert(out.end(), y.jump_times().begin(), y.jump_times().end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Node times of the time change: 0, the jumps of x strictly inside (0, T), and T.
std::vector<double> anchor_times(const PiecewiseConstPath& x) {
  std::vector<double> a{0.0};
  for (double t : x.jump_times()) {
    if (t < x.horizon()) a.push_back(t);
  }
  a.push_back(x.horizon());
  return a;
}

std::size_t cells_at(std::size_t anchors, const PiecewiseConstPath& x, const PiecewiseConstPath& y,
                     unsigned level) {
  return anchors * ((std::size_t{1} << level) + 1 + x.jump_count() + y.jump_count());
}

// Minimax DP for step paths. x is constant between consecutive anchors, so any
// time change can be replaced by its chord interpolation through the anchors
// without changing the sup term or increasing the log norm; only the images of
// the anchors have to be chosen. Returns a time change strictly better than
// `cap`, if one exists with images in `c`.
std::optional<TimeChange> solve_level(const PiecewiseConstPath& x, const PiecewiseConstPath& y,
                                      const std::vector<double>& anchors,
                                      const std::vector<double>& c, double cap) {
  const std::size_t n = c.size();
  const std::size_t m = anchors.size() - 1;  // index of the T anchor
  const auto& yj = y.jump_times();
  const std::size_t ny = yj.size() + 1;

  // reach[k][lo * ny + hi]: max over y pieces lo..hi of ||x_k - y_piece||.
  std::vector<std::vector<double>> reach(m, std::vector<double>(ny * ny, 0.0));
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t lo = 0; lo < ny; ++lo) {
      double acc = 0.0;
      for (std::size_t hi = lo; hi < ny; ++hi) {
        acc = std::max(acc, (x.piece(k) - y.piece(hi)).norm());
        reach[k][lo * ny + hi] = acc;
      }
    }
  }
  // y piece in force at c[j], and the last piece starting before c[j].
  std::vector<std::size_t> piece_at(n), piece_before(n);
  for (std::size_t j = 0; j < n; ++j) {
    piece_at[j] = static_cast<std::size_t>(std::upper_bound(yj.begin(), yj.end(), c[j]) - yj.begin());
    piece_before[j] = static_cast<std::size_t>(std::lower_bound(yj.begin(), yj.end(), c[j]) - yj.begin());
  }
  const double terminal = (x.at(x.horizon()) - y.at(y.horizon())).norm();
  if (terminal >= cap) return std::nullopt;

  std::vector<double> value((m + 1) * n, kInf);
  std::vector<std::size_t> from((m + 1) * n, n);
  value[0] = 0.0;
  for (std::size_t k = 1; k <= m; ++k) {
    const double dx = anchors[k] - anchors[k - 1];
    const std::size_t j_lo = k == m ? n - 1 : 1;
    const std::size_t j_hi = k == m ? n - 1 : n - 2;
    const double* prev = &value[(k - 1) * n];
    const std::vector<double>& r = reach[k - 1];
    for (std::size_t j = j_lo; j <= j_hi && j < n; ++j) {
      double best = cap;
      std::size_t arg = n;
      // Largest j0 whose slope is at most e^best; walk down while it can still help.
      const double max_start = c[j] - dx * std::exp(-best);
      auto j0 = static_cast<std::ptrdiff_t>(std::upper_bound(c.begin(), c.begin() + j, max_start) - c.begin()) - 1;
      for (; j0 >= 0; --j0) {
        const auto i0 = static_cast<std::size_t>(j0);
        const double dy = c[j] - c[i0];
        if (dy > dx * std::exp(best)) break;
        const double sup = r[piece_at[i0] * ny + piece_before[j]];
        if (sup >= best) break;  // the sup only grows as the interval widens
        const double v0 = prev[i0];
        if (v0 >= best) continue;
        const double total = std::max({v0, sup, std::abs(std::log(dy / dx))});
        if (total < best) {
          best = total;
          arg = i0;
        }
      }
      if (arg != n) {
        value[k * n + j] = best;
        from[k * n + j] = arg;
      }
    }
  }
  if (from[m * n + n - 1] == n) return std::nullopt;
  std::vector<double> images(m + 1);
  std::size_t j = n - 1;
  for (std::size_t k = m;; --k) {
    images[k] = c[j];
    if (k == 0) break;
    j = from[k * n + j];
  }
  return TimeChange(anchors, std::move(images));
}

}  // namespace

TimeChange::TimeChange(std::vector<double> times, std::vector<double> images)
    : times_(std::move(times)), images_(std::move(images)) {
  if (times_.size() < 2 || times_.size() != images_.size()) {
    throw InvalidInput("time change: need at least two matching node pairs");
  }
  if (times_.front() != 0.0 || images_.front() != 0.0) {
    throw InvalidInput("time change: must start at (0, 0)");
  }
  if (!(times_.back() > 0.0) || images_.back() != times_.back()) {
    throw InvalidInput("time change: must end at (T, T)");
  }
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (!(times_[i] > times_[i - 1]) || !(images_[i] > images_[i - 1])) {
      throw InvalidInput("time change: nodes must be strictly increasing in both coordinates");
    }
  }
}

TimeChange TimeChange::identity(double horizon) { return TimeChange({0.0, horizon}, {0.0, horizon}); }

double TimeChange::operator()(double t) const {
  if (t < 0.0 || t > horizon()) throw InvalidInput("time change: argument outside [0, T]");
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  if (it == times_.end()) return images_.back();
  const auto hi = static_cast<std::size_t>(it - times_.begin());
  const std::size_t lo = hi - 1;
  if (t == times_[lo]) return images_[lo];
  return images_[lo] + (t - times_[lo]) * (images_[hi] - images_[lo]) / (times_[hi] - times_[lo]);
}

double lambda_log_norm(const TimeChange& lambda) {
  const auto& t = lambda.times();
  const auto& l = lambda.images();
  double worst = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    worst = std::max(worst, std::abs(std::log((l[i] - l[i - 1]) / (t[i] - t[i - 1]))));
  }
  return worst;
}

double sup_distance(const PiecewiseConstPath& x, const PiecewiseConstPath& y) {
  return sup_distance(x, y, TimeChange::identity(x.horizon()));
}

double sup_distance(const PiecewiseConstPath& x, const PiecewiseConstPath& y,
                    const TimeChange& lambda) {
  check_horizons(x, y);
  if (lambda.horizon() != x.horizon()) throw InvalidInput("time change horizon mismatch");
  const SegmentCost cost(x, y);
  const auto& t = lambda.times();
  const auto& l = lambda.images();
  double worst = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    worst = std::max(worst, cost(t[i - 1], l[i - 1], t[i], l[i], i + 1 == t.size(), kInf));
  }
  return worst;
}

D0Bound d0_upper(const PiecewiseConstPath& x, const PiecewiseConstPath& y, unsigned grid_order,
                 const D0Options& options) {
  check_horizons(x, y);
  if (grid_order < 1) throw InvalidInput("d0_upper: grid order must be at least 1");
  if (grid_order > kMaxGridOrder) {
    throw ResourceError("d0_upper: grid order " + std::to_string(grid_order) +
                            " exceeds the lattice limit; largest feasible is " +
                            std::to_string(kMaxGridOrder),
                        static_cast<int>(kMaxGridOrder));
  }
  const std::vector<double> anchors = anchor_times(x);
  if (cells_at(anchors.size(), x, y, grid_order) > options.max_cells) {
    unsigned feasible = 0;
    while (feasible < grid_order && cells_at(anchors.size(), x, y, feasible + 1) <= options.max_cells) {
      ++feasible;
    }
    throw ResourceError("d0_upper: grid order " + std::to_string(grid_order) +
                            " needs more DP nodes than the budget; largest feasible is " +
                            std::to_string(feasible),
                        static_cast<int>(feasible));
  }

  D0Bound best;
  best.witness = TimeChange::identity(x.horizon());
  best.sup_term = sup_distance(x, y);
  best.log_norm = 0.0;
  best.bound = best.sup_term;
  for (unsigned level = 1; level <= grid_order && best.bound > 0.0; ++level) {
    const auto found = solve_level(x, y, anchors, lattice_candidates(x, y, level), best.bound);
    if (!found) continue;
    const double log_norm = lambda_log_norm(*found);
    const double sup_term = sup_distance(x, y, *found);
    const double bound = std::max(log_norm, sup_term);
    if (bound < best.bound) best = D0Bound{bound, *found, log_norm, sup_term};
  }
  return best;
}

double d0_symmetrized(const PiecewiseConstPath& x, const PiecewiseConstPath& y,
                      unsigned grid_order, const D0Options& options) {
  return std::min(d0_upper(x, y, grid_order, options).bound,
                  d0_upper(y, x, grid_order, options).bound);
}

Matrix pairwise_d0(std::span<const PiecewiseConstPath> paths, unsigned grid_order,
                   const D0Options& options) {
  const auto n = static_cast<Eigen::Index>(paths.size());
  std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  Matrix out = Matrix::Zero(n, n);
  parallel_for(pairs.size(), [&](std::size_t k) {
    const auto [i, j] = pairs[k];
    out(i, j) = out(j, i) = d0_symmetrized(paths[static_cast<std::size_t>(i)],
                                           paths[static_cast<std::size_t>(j)], grid_order, options);
  });
  return out;
}

}  // namespace levyconv
