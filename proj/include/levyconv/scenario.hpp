#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "levyconv/integrand.hpp"
#include "levyconv/path.hpp"
#include "levyconv/prm.hpp"
#include "levyconv/semigroup.hpp"
#include "levyconv/stochint.hpp"

namespace levyconv {

using Json = nlohmann::json;

/// {"kind": "diagonal"|"laplacian1d"|"zero", "mu": [...], "d": n, "scale": s}
GeneratorOp generator_from_json(const Json& spec);

/// {"marks": [string], "weights": [number]}
MarkSpace mark_space_from_json(const Json& spec);

/// {"kind": "step", "partition": [...], "values": [cell][mark][d]}
/// {"kind": "grid", "times": [...], "values": [time][mark][d]}
/// {"kind": "jumpcount", "base": [mark][d], "decay": c}
Integrand integrand_from_json(const Json& spec, std::size_t dimension, std::size_t mark_count);

/// Deterministic drift b(t).
/// {"kind": "zero"} | {"kind": "constant", "value": [d]} |
/// {"kind": "sine", "amplitude": [d], "frequency": f, "offset": [d]}
struct DriftSpec {
  enum class Kind { kZero, kConstant, kSine } kind = Kind::kZero;
  Vector offset;
  Vector amplitude;
  double frequency = 0.0;

  static DriftSpec from_json(const Json& spec, std::size_t dimension);
  bool is_zero() const noexcept;
  Vector operator()(double t) const;
  DriftPath sample(double horizon, double dt) const;
};

/// One Monte-Carlo experiment configuration, parsed from a JSON scenario file.
struct Scenario {
  Json source;  ///< normalized document the scenario was built from
  GeneratorOp generator = GeneratorOp::zero(1);
  MarkSpace marks;
  Integrand integrand = Integrand::zero(1, 1);
  DriftSpec drift;
  double horizon = 1.0;
  double dt = 0.01;
  double p = 2.0;
  double alpha = 0.25;
  double q_prime = 1.0;
  std::vector<double> probes;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  Construction construction = Construction::kExponential;
  int permutations = 199;
  /// Optional extra functional: d0_symmetrized from the solution (sampled at
  /// its nodes as a step path) to this path, at lattice order reference_grid.
  /// {"reference": {"times": [0, ...], "values": [[d], ...], "grid": g}}
  std::optional<PiecewiseConstPath> reference;
  unsigned reference_grid = 6;

  /// Validates every field. Throws InvalidInput for malformed values and
  /// HypothesisError when alpha * p >= 1.
  static Scenario from_json(const Json& document);

  /// Copy with a different seed, construction or sample count; `source` is kept in sync.
  Scenario with_seed(std::uint64_t new_seed) const;
  Scenario with_construction(Construction c) const;
  Scenario with_samples(std::size_t n) const;
  Scenario with_weights_scaled(double factor) const;

  /// Fields that determine the law of (b, xi, eta) and of the solution: the
  /// document without seed, construction, sample count and test settings.
  Json law_signature() const;

  /// 16 hex digits (FNV-1a 64 of the compact normalized document).
  std::string digest() const;
};

/// Applies `overrides` on top of `base` (JSON merge patch).
Json merge_scenario(const Json& base, const Json& overrides);

std::string construction_name(Construction c);
Construction construction_from_name(const std::string& name);

std::string fnv1a_hex(const std::string& text);

}  // namespace levyconv
