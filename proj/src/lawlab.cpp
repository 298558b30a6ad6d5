#include "levyconv/lawlab.hpp"

#include <algorithm>
#include <cmath>

#include "levyconv/error.hpp"
#include "levyconv/parallel.hpp"
#include "levyconv/skorokhod.hpp"

namespace levyconv {

std::vector<std::string> functional_names(const Scenario& s) {
  std::vector<std::string> names;
  for (double t : s.probes) {
    for (std::size_t i = 0; i < s.generator.dimension(); ++i) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "u(%.6g)[%zu]", t, i);
      names.emplace_back(buf);
    }
  }
  names.emplace_back("lp_domain_norm");
  names.emplace_back("sup_extrapolation_norm");
  names.emplace_back("jump_count");
  names.emplace_back("xi_lp_mass");
  if (!s.drift.is_zero()) names.emplace_back("drift_lp_norm");
  if (s.reference) names.emplace_back("d0_to_reference");
  return names;
}

PrmRealization draw_realization(const Scenario& s, std::uint64_t index) {
  Stream stream(s.seed, index);
  return simulate_prm(s.construction, s.marks, s.horizon, stream);
}

GridPath draw_solution(const Scenario& s, const PrmRealization& eta) {
  std::vector<double> extra = s.integrand.breakpoints(s.horizon);
  extra.insert(extra.end(), s.probes.begin(), s.probes.end());
  const std::vector<double> nodes = event_grid(s.horizon, s.dt, eta.atoms(), extra);
  GridPath u = convolve_on(s.generator, s.integrand, eta, nodes);
  if (!s.drift.is_zero()) {
    const GridPath v = drift_convolve_on(s.generator, s.drift.sample(s.horizon, s.dt), nodes);
    u.values += v.values;
    u.left_limits += v.values;
  }
  return u;
}

double path_lp_norm(const GridPath& u, const Matrix& m, double p) {
  double acc = 0.0;
  for (std::size_t i = 1; i < u.size(); ++i) {
    const auto c = static_cast<Eigen::Index>(i);
    const double left = std::pow((m * u.values.col(c - 1)).norm(), p);
    const double right = std::pow((m * u.left_limits.col(c)).norm(), p);
    acc += 0.5 * (u.times[i] - u.times[i - 1]) * (left + right);
  }
  return std::pow(acc, 1.0 / p);
}

namespace {

std::size_t node_index(const GridPath& u, double t) {
  auto it = std::lower_bound(u.times.begin(), u.times.end(), t);
  if (it == u.times.end() || *it != t) throw InvalidInput("probe time is not a node");
  return static_cast<std::size_t>(it - u.times.begin());
}

}  // namespace

PiecewiseConstPath node_path(const GridPath& u) {
  std::vector<double> times;
  std::vector<Vector> values;
  for (std::size_t i = 1; i < u.size(); ++i) {
    times.push_back(u.times[i]);
    values.push_back(u.value(i));
  }
  return PiecewiseConstPath(u.value(0), std::move(times), std::move(values), u.horizon());
}

FunctionalVector sample_triple_functionals(const Scenario& s, std::uint64_t index) {
  if (!s.generator.invertible()) {
    throw SingularityError("triple functionals: the E_-1 norm needs an invertible generator");
  }
  const PrmRealization eta = draw_realization(s, index);
  const GridPath u = draw_solution(s, eta);

  FunctionalVector out;
  out.jump_count = eta.size();
  for (double t : s.probes) {
    const Vector v = u.value(node_index(u, t));
    out.values.insert(out.values.end(), v.data(), v.data() + v.size());
  }
  out.values.push_back(path_lp_norm(u, s.generator.power_matrix(s.alpha), s.p));
  const Matrix inverse = s.generator.power_matrix(-1.0);
  double sup = 0.0;
  for (Eigen::Index i = 0; i < u.values.cols(); ++i) {
    sup = std::max({sup, (inverse * u.values.col(i)).norm(), (inverse * u.left_limits.col(i)).norm()});
  }
  out.values.push_back(sup);
  out.values.push_back(static_cast<double>(eta.size()));
  out.values.push_back(s.integrand.lp_mass(eta, s.p));
  if (!s.drift.is_zero()) {
    const DriftPath b = s.drift.sample(s.horizon, s.dt);
    double acc = 0.0;
    for (std::size_t k = 0; k < b.times.size(); ++k) {
      const double end = k + 1 < b.times.size() ? b.times[k + 1] : s.horizon;
      acc += (end - b.times[k]) * std::pow(b.values[k].norm(), s.p);
    }
    out.values.push_back(std::pow(acc, 1.0 / s.p));
  }
  if (s.reference) {
    out.values.push_back(d0_symmetrized(node_path(u), *s.reference, s.reference_grid));
  }
  return out;
}

Matrix sample_ensemble(const Scenario& s) {
  const auto width = static_cast<Eigen::Index>(functional_names(s).size());
  Matrix rows(static_cast<Eigen::Index>(s.samples), width);
  parallel_for(s.samples, [&](std::size_t i) {
    const FunctionalVector f = sample_triple_functionals(s, i);
    rows.row(static_cast<Eigen::Index>(i)) =
        Eigen::Map<const Eigen::RowVectorXd>(f.values.data(), width);
  });
  return rows;
}

TestReport law_equality_experiment(const Scenario& a, const Scenario& b,
                                   const LawTestOptions& options) {
  if (a.law_signature() != b.law_signature()) {
    if (!options.force) {
      throw ConfigurationError(
          "law test: the scenarios specify different laws of (b, xi, eta); "
          "only construction, seed and sample count may differ (use --force to override)");
    }
  }
  if (functional_names(a) != functional_names(b)) {
    throw ConfigurationError("law test: the scenarios produce different functional vectors");
  }
  const Matrix xa = sample_ensemble(a);
  const Matrix xb = sample_ensemble(b);

  TestReport report;
  report.forced = options.force && a.law_signature() != b.law_signature();
  report.samples_a = a.samples;
  report.samples_b = b.samples;
  report.seed_a = a.seed;
  report.seed_b = b.seed;
  report.digest_a = a.digest();
  report.digest_b = b.digest();
  report.construction_a = construction_name(a.construction);
  report.construction_b = construction_name(b.construction);
  report.permutation_seed = derive_seed(a.seed, b.seed);
  const PermutationResult perm =
      energy_permutation_test(xa, xb, a.permutations, report.permutation_seed);
  report.energy_statistic = perm.statistic;
  report.p_value = perm.p_value;
  report.permutations = perm.permutations;

  const std::vector<std::string> names = functional_names(a);
  for (std::size_t c = 0; c < names.size(); ++c) {
    const auto col = static_cast<Eigen::Index>(c);
    const Vector ca = xa.col(col);
    const Vector cb = xb.col(col);
    const KsResult ks = ks_two_sample({ca.data(), static_cast<std::size_t>(ca.size())},
                                      {cb.data(), static_cast<std::size_t>(cb.size())});
    report.ks.push_back({names[c], ks.statistic, ks.p_value});
  }
  return report;
}

MaximalRatio maximal_ratio_experiment(const Scenario& s, double q_prime) {
  if (!s.generator.contraction()) {
    throw HypothesisError("maximal inequality: the semigroup must be of contraction type");
  }
  if (!(q_prime > 0.0) || q_prime > s.p) {
    throw HypothesisError("maximal inequality: q' must lie in (0, p]");
  }
  std::vector<double> lhs(s.samples);
  std::vector<double> rhs(s.samples);
  parallel_for(s.samples, [&](std::size_t i) {
    const PrmRealization eta = draw_realization(s, i);
    const GridPath u = convolve(s.generator, s.integrand, eta, s.dt);
    double sup = 0.0;
    for (Eigen::Index k = 0; k < u.values.cols(); ++k) {
      sup = std::max({sup, u.values.col(k).norm(), u.left_limits.col(k).norm()});
    }
    lhs[i] = std::pow(sup, q_prime);
    rhs[i] = std::pow(s.integrand.lp_mass(eta, s.p), q_prime / s.p);
  });
  MaximalRatio out;
  out.samples = s.samples;
  out.lhs = mean(lhs);
  out.rhs = mean(rhs);
  if (out.rhs == 0.0) {
    out.degenerate = true;
    out.ratio = 0.0;
  } else {
    out.ratio = out.lhs / out.rhs;
  }
  return out;
}

double analytic_bound_constant(double alpha, double p, double horizon) {
  if (!(alpha > 0.0) || !(p > 1.0) || alpha * p >= 1.0) {
    throw HypothesisError("analytic bound: need alpha > 0, p > 1 and alpha * p < 1");
  }
  const double c = power_semigroup_constant(alpha);
  return std::pow(c, p) * std::pow(horizon, 1.0 - alpha * p) / (1.0 - alpha * p);
}

AnalyticBound analytic_bound_experiment(const Scenario& s) {
  if (s.alpha * s.p >= 1.0) throw HypothesisError("analytic bound: alpha * p must be < 1");
  if (!s.generator.invertible()) {
    throw HypothesisError("analytic bound: the generator must be invertible");
  }
  const Matrix power = s.generator.power_matrix(s.alpha);
  std::vector<double> lhs(s.samples);
  std::vector<double> mass(s.samples);
  parallel_for(s.samples, [&](std::size_t i) {
    const PrmRealization eta = draw_realization(s, i);
    const GridPath u = convolve(s.generator, s.integrand, eta, s.dt);
    lhs[i] = std::pow(path_lp_norm(u, power, s.p), s.p);
    mass[i] = s.integrand.lp_mass(eta, s.p);
  });
  AnalyticBound out;
  out.samples = s.samples;
  out.constant = analytic_bound_constant(s.alpha, s.p, s.horizon);
  out.lhs = mean(lhs);
  out.rhs = out.constant * mean(mass);
  out.ratio = out.rhs > 0.0 ? out.lhs / out.rhs : 0.0;
  return out;
}

}  // namespace levyconv
