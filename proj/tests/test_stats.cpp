#include <doctest.h>

#include <cmath>

#include "levyconv/error.hpp"
#include "levyconv/rng.hpp"
#include "levyconv/stats.hpp"

using namespace levyconv;

namespace {

/// Brute-force sup |F_a - F_b| over all sample points.
double ks_oracle(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  std::vector<double> pts = a;
  pts.insert(pts.end(), b.begin(), b.end());
  for (double v : pts) {
    double fa = 0.0, fb = 0.0;
    for (double x : a) fa += x <= v;
    for (double y : b) fb += y <= v;
    d = std::max(d, std::abs(fa / a.size() - fb / b.size()));
  }
  return d;
}

double kolmogorov_oracle(double lambda) {
  double acc = 0.0;
  for (int k = 1; k <= 200; ++k) acc += (k % 2 ? 2.0 : -2.0) * std::exp(-2.0 * k * k * lambda * lambda);
  return std::clamp(acc, 0.0, 1.0);
}

Matrix gaussian_cloud(Stream& rng, Eigen::Index n, Eigen::Index d, double shift) {
  Matrix m(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const double u1 = rng.uniform(), u2 = rng.uniform();
      m(i, j) = shift + std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }
  }
  return m;
}

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("KS statistic against brute force") {
  Stream rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(1 + rng.below(30)), b(1 + rng.below(30));
    // Coarse values force ties.
    for (double& x : a) x = static_cast<double>(rng.below(8));
    for (double& y : b) y = static_cast<double>(rng.below(8)) + (trial % 2 ? 0.5 : 0.0);
    CHECK(ks_two_sample(a, b).statistic == doctest::Approx(ks_oracle(a, b)).epsilon(1e-15));
  }
  const std::vector<double> x{1, 2, 3}, y{4, 5, 6};
  CHECK(ks_two_sample(x, y).statistic == 1.0);
  CHECK(ks_two_sample(x, x).statistic == 0.0);
  CHECK(ks_two_sample(x, x).p_value == doctest::Approx(1.0));
  CHECK_THROWS_AS(ks_two_sample(x, std::vector<double>{}), InvalidInput);
}

TEST_CASE("Kolmogorov and chi-square tails") {
  for (double l : {0.3, 0.5, 1.0, 1.36, 2.0}) CHECK(kolmogorov_survival(l) == doctest::Approx(kolmogorov_oracle(l)).epsilon(1e-10));
  CHECK(kolmogorov_survival(1.0) == doctest::Approx(0.26999967167735456).epsilon(1e-12));
  CHECK(chi_square_survival(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-10));
  // Two degrees of freedom: survival is exp(-x/2).
  CHECK(chi_square_survival(4.0, 2) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
}

TEST_CASE("chi-square Poisson statistic on a hand-binned sample") {
  // mean 1, n = 100: bins 0, 1, 2 and a tail bin >= 3 (expected 8.03).
  std::vector<std::uint64_t> counts;
  for (auto [k, times] : {std::pair{0, 37}, {1, 36}, {2, 19}, {3, 6}, {4, 2}}) {
    for (int i = 0; i < times; ++i) counts.push_back(static_cast<std::uint64_t>(k));
  }
  const double e0 = 100.0 * std::exp(-1.0);
  const double e2 = 100.0 * std::exp(-1.0) / 2.0;
  const double tail = 100.0 - 2.0 * e0 - e2;
  // Top count 4 adds bin 4, whose expected 1.53 + tail 0.37 is pooled into bin 3.
  const double stat = (37 - e0) * (37 - e0) / e0 + (36 - e0) * (36 - e0) / e0 + (19 - e2) * (19 - e2) / e2 +
                      (8 - tail) * (8 - tail) / tail;
  const auto r = chi_square_poisson(counts, 1.0);
  CHECK(r.degrees_of_freedom == 3);
  CHECK(r.statistic == doctest::Approx(stat).epsilon(1e-12));
  CHECK(chi_square_poisson(counts, 3.0).p_value < 1e-6);
}

TEST_CASE("energy distance") {
  Matrix p(1, 2);
  p << 0.5, -1.0;
  CHECK(energy_distance(p, p) == 0.0);
  Matrix a = Matrix::Zero(1, 1), b = Matrix::Ones(1, 1);
  CHECK(energy_distance(a, b, false) == doctest::Approx(2.0));
  Stream rng(2);
  const Matrix x = gaussian_cloud(rng, 50, 3, 0.0);
  const Matrix y = gaussian_cloud(rng, 40, 3, 0.3);
  CHECK(energy_distance(x, y) >= 0.0);
  CHECK(energy_distance(x, y) == doctest::Approx(energy_distance(y, x)).epsilon(1e-12));
  CHECK(energy_permutation_test(x, y, 99, 1).statistic == doctest::Approx(energy_distance(x, y)).epsilon(1e-9));
}

TEST_CASE("standardization ignores constant coordinates") {
  Stream rng(3);
  Matrix x = gaussian_cloud(rng, 30, 2, 0.0);
  Matrix y = gaussian_cloud(rng, 30, 2, 0.0);
  x.col(1).setConstant(4.535);
  y.col(1).setConstant(4.535);
  Matrix x1 = x.leftCols(1), y1 = y.leftCols(1);
  CHECK(energy_distance(x, y) == doctest::Approx(energy_distance(x1, y1)).epsilon(1e-12));
}

TEST_CASE("permutation test") {
  Stream rng(4);
  const Matrix x = gaussian_cloud(rng, 40, 2, 0.0);
  const auto same = energy_permutation_test(x, x, 199, 5);
  CHECK(same.p_value == 1.0);
  const Matrix near = gaussian_cloud(rng, 200, 2, 0.0);
  const Matrix far = gaussian_cloud(rng, 200, 2, 10.0);
  CHECK(permutation_pvalue(near, far, 199, 6) <= 0.01);
  CHECK(permutation_pvalue(near, far, 199, 6) == doctest::Approx(1.0 / 200.0));
  const Matrix y = gaussian_cloud(rng, 35, 2, 0.0);
  CHECK(permutation_pvalue(x, y, 99, 7) == permutation_pvalue(x, y, 99, 7));
  CHECK_THROWS_AS(permutation_pvalue(x, y, 10, 7), InvalidInput);
}

TEST_CASE("permutation p-values are calibrated under the null") {
  Stream rng(5);
  int below = 0;
  constexpr int reps = 200;
  for (int r = 0; r < reps; ++r) {
    const Matrix a = gaussian_cloud(rng, 60, 2, 0.0);
    const Matrix b = gaussian_cloud(rng, 60, 2, 0.0);
    below += permutation_pvalue(a, b, 99, static_cast<std::uint64_t>(r)) < 0.05;
  }
  const double frac = static_cast<double>(below) / reps;
  CHECK(frac >= 0.01);
  CHECK(frac <= 0.12);
}

}  // TEST_SUITE
