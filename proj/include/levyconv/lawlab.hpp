#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "levyconv/scenario.hpp"
#include "levyconv/stats.hpp"
#include "levyconv/stochint.hpp"

namespace levyconv {

/// Per-draw functionals of the triple (u, xi, eta), one entry per name in
/// functional_names(). Entries: u(t_k) coordinates; ||u||_{L^p(0,T; D(A^alpha))};
/// sup over nodes of ||u(t)||_{E_-1}; eta((0,T] x Z); int int ||xi||^p dnu dt;
/// ||b||_{L^p} when the drift is nonzero; d0 to the reference path when one is set.
struct FunctionalVector {
  std::vector<double> values;
  std::size_t jump_count = 0;
};

std::vector<std::string> functional_names(const Scenario& s);

/// Realization for draw `index`: stream derived from (s.seed, index).
PrmRealization draw_realization(const Scenario& s, std::uint64_t index);

/// Solution path of draw `index` on the event grid refined by the probe times.
GridPath draw_solution(const Scenario& s, const PrmRealization& eta);

/// u held at its node values: right-continuous step path jumping at every node.
PiecewiseConstPath node_path(const GridPath& u);

FunctionalVector sample_triple_functionals(const Scenario& s, std::uint64_t index);

/// s.samples draws as rows, computed in parallel and placed by draw index.
Matrix sample_ensemble(const Scenario& s);

struct KsCoordinate {
  std::string name;
  double statistic = 0.0;
  double p_value = 1.0;
};

struct TestReport {
  double energy_statistic = 0.0;
  double p_value = 1.0;
  int permutations = 0;
  std::vector<KsCoordinate> ks;
  std::size_t samples_a = 0;
  std::size_t samples_b = 0;
  std::uint64_t seed_a = 0;
  std::uint64_t seed_b = 0;
  std::uint64_t permutation_seed = 0;
  std::string digest_a;
  std::string digest_b;
  std::string construction_a;
  std::string construction_b;
  bool forced = false;
};

struct LawTestOptions {
  /// Run even when the two scenarios specify different laws.
  bool force = false;
};

/// Compares the laws of the functional vectors under two scenarios that share
/// the law of (b, xi, eta) and differ in construction and/or seed: energy
/// distance with a permutation p-value plus a KS test per coordinate.
TestReport law_equality_experiment(const Scenario& a, const Scenario& b,
                                   const LawTestOptions& options = {});

struct MaximalRatio {
  double ratio = 0.0;
  double lhs = 0.0;  ///< mean of sup_t ||u(t)||^q'
  double rhs = 0.0;  ///< mean of (int int ||xi||^p)^{q'/p}
  bool degenerate = false;
  std::size_t samples = 0;
};

/// Monte-Carlo ratio of the two sides of the maximal inequality for the
/// stochastic convolution, with sup over nodes (values and left limits).
MaximalRatio maximal_ratio_experiment(const Scenario& s, double q_prime);

struct AnalyticBound {
  double lhs = 0.0;       ///< mean of ||A^alpha u||^p_{L^p(0,T;E)}
  double rhs = 0.0;       ///< constant * mean of int int ||xi||^p
  double ratio = 0.0;
  double constant = 0.0;  ///< C^p T^{1 - alpha p} / (1 - alpha p)
  std::size_t samples = 0;
};

/// C_{alpha,p} = (alpha/e)^{alpha p} T^{1 - alpha p} / (1 - alpha p).
double analytic_bound_constant(double alpha, double p, double horizon);

AnalyticBound analytic_bound_experiment(const Scenario& s);

/// (int_0^T ||m u(t)||^p dt)^{1/p}, trapezoid rule with left limits at jumps.
double path_lp_norm(const GridPath& u, const Matrix& m, double p);

}  // namespace levyconv
