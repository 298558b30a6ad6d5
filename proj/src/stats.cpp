#include "levyconv/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>

#include "levyconv/error.hpp"
#include "levyconv/rng.hpp"

namespace levyconv {

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-16 * std::abs(sum)) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw InvalidInput("ks_two_sample: samples must be nonempty");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double n = static_cast<double>(x.size());
  const double m = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  const double en = std::sqrt(n * m / (n + m));
  return {d, kolmogorov_survival((en + 0.12 + 0.11 / en) * d)};
}

double chi_square_survival(double statistic, int degrees_of_freedom) {
  if (degrees_of_freedom < 1) throw InvalidInput("chi-square: need at least one degree of freedom");
  if (statistic <= 0.0) return 1.0;
  return boost::math::gamma_q(0.5 * degrees_of_freedom, 0.5 * statistic);
}

ChiSquareResult chi_square_poisson(std::span<const std::uint64_t> counts, double mean_value,
                                   double min_expected) {
  if (counts.empty()) throw InvalidInput("chi_square_poisson: no observations");
  if (!(mean_value > 0.0)) throw InvalidInput("chi_square_poisson: mean must be positive");
  const double n = static_cast<double>(counts.size());
  const std::uint64_t top = *std::max_element(counts.begin(), counts.end());

  // Bins k = 0..K; the last bin collects the upper tail P(X >= K).
  std::vector<double> expected;
  double pmf = std::exp(-mean_value);
  double cdf = 0.0;
  for (std::uint64_t k = 0;; ++k) {
    expected.push_back(n * pmf);
    cdf += pmf;
    if (k >= top && n * (1.0 - cdf) < min_expected) break;
    pmf *= mean_value / static_cast<double>(k + 1);
  }
  expected.back() += n * std::max(0.0, 1.0 - cdf);
  std::vector<double> observed(expected.size(), 0.0);
  for (std::uint64_t c : counts) observed[std::min<std::size_t>(c, observed.size() - 1)] += 1.0;

  // Pool from the left, then fold a short final bin into its neighbour.
  std::vector<double> e_bins;
  std::vector<double> o_bins;
  double e_acc = 0.0;
  double o_acc = 0.0;
  for (std::size_t k = 0; k < expected.size(); ++k) {
    e_acc += expected[k];
    o_acc += observed[k];
    if (e_acc >= min_expected) {
      e_bins.push_back(e_acc);
      o_bins.push_back(o_acc);
      e_acc = o_acc = 0.0;
    }
  }
  if (e_acc > 0.0 || o_acc > 0.0) {
    if (e_bins.empty()) {
      e_bins.push_back(e_acc);
      o_bins.push_back(o_acc);
    } else {
      e_bins.back() += e_acc;
      o_bins.back() += o_acc;
    }
  }
  ChiSquareResult out;
  for (std::size_t k = 0; k < e_bins.size(); ++k) {
    const double r = o_bins[k] - e_bins[k];
    out.statistic += r * r / e_bins[k];
  }
  out.degrees_of_freedom = static_cast<int>(e_bins.size()) - 1;
  out.p_value = out.degrees_of_freedom >= 1
                    ? chi_square_survival(out.statistic, out.degrees_of_freedom)
                    : 1.0;
  return out;
}

double mean(std::span<const double> x) {
  if (x.empty()) throw InvalidInput("mean of an empty sample");
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
  if (x.size() < 2) throw InvalidInput("variance needs at least two observations");
  const double m = mean(x);
  double acc = 0.0;
  for (double v : x) acc += (v - m) * (v - m);
  return acc / static_cast<double>(x.size() - 1);
}

double correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InvalidInput("correlation needs two equal-length samples");
  }
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

void standardize_pooled(Matrix& a, Matrix& b) {
  if (a.cols() != b.cols()) throw InvalidInput("standardize: column counts differ");
  const Eigen::Index total = a.rows() + b.rows();
  if (total < 2) return;
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    const double m = (a.col(c).sum() + b.col(c).sum()) / static_cast<double>(total);
    const double ss = (a.col(c).array() - m).square().sum() + (b.col(c).array() - m).square().sum();
    const double sd = std::sqrt(ss / static_cast<double>(total - 1));
    const double scale = std::max(a.col(c).cwiseAbs().maxCoeff(), b.col(c).cwiseAbs().maxCoeff());
    a.col(c).array() -= m;
    b.col(c).array() -= m;
    // Rounding noise in a constant coordinate must not be blown up to unit variance.
    if (sd <= 1e-12 * scale) {
      a.col(c).setZero();
      b.col(c).setZero();
    } else {
      a.col(c) /= sd;
      b.col(c) /= sd;
    }
  }
}

namespace {

void check_samples(const Matrix& a, const Matrix& b) {
  if (a.rows() == 0 || b.rows() == 0) throw InvalidInput("energy distance: empty sample");
  if (a.cols() != b.cols()) throw InvalidInput("energy distance: dimension mismatch");
}

double mean_pair_distance(const Matrix& a, const Matrix& b) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    acc += (b.rowwise() - a.row(i)).rowwise().norm().sum();
  }
  return acc / (static_cast<double>(a.rows()) * static_cast<double>(b.rows()));
}

}  // namespace

double energy_distance(const Matrix& a_in, const Matrix& b_in, bool standardize) {
  check_samples(a_in, b_in);
  Matrix a = a_in;
  Matrix b = b_in;
  if (standardize) standardize_pooled(a, b);
  return 2.0 * mean_pair_distance(a, b) - mean_pair_distance(a, a) - mean_pair_distance(b, b);
}

PermutationResult energy_permutation_test(const Matrix& a_in, const Matrix& b_in, int permutations,
                                          std::uint64_t seed, bool standardize) {
  check_samples(a_in, b_in);
  if (permutations < 99) throw InvalidInput("permutation test: need at least 99 permutations");
  Matrix a = a_in;
  Matrix b = b_in;
  if (standardize) standardize_pooled(a, b);
  const Eigen::Index n = a.rows();
  const Eigen::Index m = b.rows();
  const Eigen::Index total = n + m;
  Matrix pooled(total, a.cols());
  pooled << a, b;

  // Pairwise distances through the Gram matrix, then clamped at zero.
  const Vector sq = pooled.rowwise().squaredNorm();
  Matrix dist = -2.0 * pooled * pooled.transpose();
  dist.colwise() += sq;
  dist.rowwise() += sq.transpose();
  dist = dist.cwiseMax(0.0).cwiseSqrt();
  dist.diagonal().setZero();
  const double grand = dist.sum();

  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  auto statistic = [&](double within_a, double a_row_total) {
    const double across = a_row_total - within_a;
    const double within_b = grand - within_a - 2.0 * across;
    return 2.0 * across / (nn * mm) - within_a / (nn * nn) - within_b / (mm * mm);
  };

  // Column 0 is the observed labelling; the rest are permutations.
  constexpr int kBatch = 32;
  std::vector<double> stats(static_cast<std::size_t>(permutations) + 1);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(total));
  for (int start = 0; start <= permutations; start += kBatch) {
    const int width = std::min(kBatch, permutations + 1 - start);
    Matrix labels = Matrix::Zero(total, width);
    for (int c = 0; c < width; ++c) {
      const int index = start + c;
      std::iota(order.begin(), order.end(), Eigen::Index{0});
      if (index > 0) {
        Stream stream(seed, static_cast<std::uint64_t>(index));
        for (std::size_t i = order.size() - 1; i > 0; --i) {
          std::swap(order[i], order[stream.below(i + 1)]);
        }
      }
      for (Eigen::Index i = 0; i < n; ++i) labels(order[static_cast<std::size_t>(i)], c) = 1.0;
    }
    const Matrix reach = dist * labels;
    for (int c = 0; c < width; ++c) {
      const double within_a = labels.col(c).dot(reach.col(c));
      stats[static_cast<std::size_t>(start + c)] = statistic(within_a, reach.col(c).sum());
    }
  }

  PermutationResult out;
  out.statistic = stats.front();
  out.permutations = permutations;
  const double tolerance = 1e-10 * (std::abs(out.statistic) + grand / (static_cast<double>(total) * static_cast<double>(total)));
  int at_least = 0;
  for (std::size_t k = 1; k < stats.size(); ++k) {
    if (stats[k] >= out.statistic - tolerance) ++at_least;
  }
  out.p_value = (1.0 + at_least) / (1.0 + permutations);
  return out;
}

double permutation_pvalue(const Matrix& a, const Matrix& b, int permutations, std::uint64_t seed) {
  return energy_permutation_test(a, b, permutations, seed).p_value;
}

}  // namespace levyconv
