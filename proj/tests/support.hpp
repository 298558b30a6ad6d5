#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "levyconv/path.hpp"
#include "levyconv/projections.hpp"
#include "levyconv/prm.hpp"
#include "levyconv/rng.hpp"

namespace testing {

using namespace levyconv;

inline MarkSpace two_marks(double w0 = 1.0, double w1 = 1.0) {
  return MarkSpace({"z0", "z1"}, {w0, w1});
}

/// Scalar step path with up to `max_jumps` jumps at times drawn on (0, 1].
/// Placement gives up after a bounded number of rejected draws, so a tight
/// `min_gap` yields fewer jumps rather than a hang.
inline PiecewiseConstPath random_step_path(Stream& rng, std::size_t max_jumps, double min_gap = 0.0) {
  const std::size_t k = rng.below(max_jumps + 1);
  std::vector<double> times;
  for (int attempts = 0; times.size() < k && attempts < 10000; ++attempts) {
    const double t = rng.uniform();
    bool ok = true;
    for (double s : times) ok = ok && std::abs(s - t) > std::max(min_gap, 1e-9);
    if (min_gap > 0.0) ok = ok && t > min_gap && t < 1.0 - min_gap;
    if (ok) times.push_back(t);
  }
  std::sort(times.begin(), times.end());
  std::vector<Vector> values;
  Vector v = Vector::Constant(1, 2.0 * rng.uniform() - 1.0);
  const Vector initial = v;
  for (std::size_t i = 0; i < times.size(); ++i) {
    v(0) += (rng.uniform() < 0.5 ? -1.0 : 1.0) * (0.2 + rng.uniform());
    values.push_back(v);
  }
  return PiecewiseConstPath(initial, times, values, 1.0);
}

/// Random step function on [0, 1] constant on order-`coarse` cells, sampled at order `order`.
inline SampledFunction random_step_function(Stream& rng, unsigned order, unsigned coarse,
                                            std::size_t dim = 1) {
  const std::size_t cells = std::size_t{1} << order;
  const std::size_t block = std::size_t{1} << (order - coarse);
  Matrix values(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(cells));
  for (std::size_t i = 0; i < cells; i += block) {
    for (std::size_t c = 0; c < dim; ++c) {
      const double level = 4.0 * rng.uniform() - 2.0;
      for (std::size_t j = i; j < i + block; ++j) {
        values(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(j)) = level;
      }
    }
  }
  return SampledFunction(order, std::move(values));
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("levyconv_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testing
