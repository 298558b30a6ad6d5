#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "levyconv/semigroup.hpp"

namespace levyconv {

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov test with the asymptotic Kolmogorov
/// distribution (Stephens' small-sample correction). Ties are handled by
/// stepping both empirical CDFs through each distinct value together, which
/// makes the test conservative for discrete data.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// P(K > lambda) for the Kolmogorov distribution.
double kolmogorov_survival(double lambda);

struct ChiSquareResult {
  double statistic = 0.0;
  double p_value = 1.0;
  int degrees_of_freedom = 0;
};

/// Goodness of fit of nonnegative integer counts to Poisson(mean). Adjacent
/// bins are pooled until every expected count is at least `min_expected`.
ChiSquareResult chi_square_poisson(std::span<const std::uint64_t> counts, double mean,
                                   double min_expected = 5.0);

/// Upper tail of the chi-square distribution.
double chi_square_survival(double statistic, int degrees_of_freedom);

double mean(std::span<const double> x);
/// Unbiased sample variance.
double variance(std::span<const double> x);
double correlation(std::span<const double> x, std::span<const double> y);

/// Rows of `a` and `b` are observations. Centers every coordinate at its pooled
/// mean and divides by the pooled standard deviation; coordinates with no
/// spread beyond rounding become zero.
void standardize_pooled(Matrix& a, Matrix& b);

/// Energy distance 2 E|a - b| - E|a - a'| - E|b - b'| over all pairs
/// (V-statistic), Euclidean norm on rows.
double energy_distance(const Matrix& a, const Matrix& b, bool standardize = true);

struct PermutationResult {
  double statistic = 0.0;
  double p_value = 1.0;
  int permutations = 0;
};

/// Permutation test of equal laws with the energy distance: fraction of label
/// permutations whose statistic is at least the observed one, with +1
/// smoothing. Deterministic given `seed`.
PermutationResult energy_permutation_test(const Matrix& a, const Matrix& b, int permutations,
                                          std::uint64_t seed, bool standardize = true);

/// p-value of energy_permutation_test.
double permutation_pvalue(const Matrix& a, const Matrix& b, int permutations, std::uint64_t seed);

}  // namespace levyconv
