#include "levyconv/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "levyconv/error.hpp"

namespace levyconv {

namespace {

std::vector<double> number_list(const Json& j, const char* what) {
  if (!j.is_array()) throw InvalidInput(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const Json& v : j) {
    if (!v.is_number()) throw InvalidInput(std::string(what) + " must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

Vector vector_of(const Json& j, std::size_t dimension, const char* what) {
  const std::vector<double> v = number_list(j, what);
  if (v.size() != dimension) {
    throw InvalidInput(std::string(what) + " has length " + std::to_string(v.size()) +
                       ", expected " + std::to_string(dimension));
  }
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// [mark][d] -> d x |Z|
Matrix block_of(const Json& j, std::size_t dimension, std::size_t mark_count, const char* what) {
  if (!j.is_array() || j.size() != mark_count) {
    throw InvalidInput(std::string(what) + " needs one vector per mark");
  }
  Matrix block(static_cast<Eigen::Index>(dimension), static_cast<Eigen::Index>(mark_count));
  for (std::size_t z = 0; z < mark_count; ++z) {
    block.col(static_cast<Eigen::Index>(z)) = vector_of(j[z], dimension, what);
  }
  return block;
}

template <typename T>
T field(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InvalidInput(std::string("field '") + key + "' has the wrong type");
  }
}

Json required(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidInput(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

}  // namespace

GeneratorOp generator_from_json(const Json& spec) {
  const std::string kind = field<std::string>(spec, "kind", "");
  if (kind == "diagonal") return GeneratorOp::diagonal(number_list(required(spec, "mu"), "mu"));
  if (kind == "laplacian1d") {
    return GeneratorOp::dirichlet_laplacian_1d(field<std::size_t>(spec, "d", 0),
                                               field<double>(spec, "scale", 1.0));
  }
  if (kind == "zero") {
    const auto d = field<std::size_t>(spec, "d", 0);
    if (d == 0) throw InvalidInput("zero generator: 'd' must be positive");
    return GeneratorOp::zero(d);
  }
  throw InvalidInput("generator kind must be diagonal, laplacian1d or zero (got '" + kind + "')");
}

MarkSpace mark_space_from_json(const Json& spec) {
  const Json marks = required(spec, "marks");
  if (!marks.is_array()) throw InvalidInput("'marks' must be an array of strings");
  std::vector<std::string> names;
  for (const Json& m : marks) {
    if (!m.is_string()) throw InvalidInput("'marks' must be an array of strings");
    names.push_back(m.get<std::string>());
  }
  return MarkSpace(std::move(names), number_list(required(spec, "weights"), "weights"));
}

Integrand integrand_from_json(const Json& spec, std::size_t dimension, std::size_t mark_count) {
  const std::string kind = field<std::string>(spec, "kind", "");
  if (kind == "step") {
    std::vector<double> partition = number_list(required(spec, "partition"), "partition");
    const Json values = required(spec, "values");
    if (!values.is_array()) throw InvalidInput("step integrand 'values' must be an array");
    std::vector<Matrix> blocks;
    for (const Json& cell : values) blocks.push_back(block_of(cell, dimension, mark_count, "step values"));
    return Integrand(StepIntegrand(std::move(partition), std::move(blocks)));
  }
  if (kind == "grid") {
    std::vector<double> times = number_list(required(spec, "times"), "times");
    const Json values = required(spec, "values");
    if (!values.is_array()) throw InvalidInput("grid integrand 'values' must be an array");
    std::vector<Matrix> samples;
    for (const Json& s : values) samples.push_back(block_of(s, dimension, mark_count, "grid values"));
    return Integrand(SampledIntegrand(std::move(times), std::move(samples)));
  }
  if (kind == "jumpcount") {
    return Integrand(PredictableIntegrand::jump_count(
        block_of(required(spec, "base"), dimension, mark_count, "jumpcount base"),
        field<double>(spec, "decay", 1.0)));
  }
  throw InvalidInput("integrand kind must be step, grid or jumpcount (got '" + kind + "')");
}

DriftSpec DriftSpec::from_json(const Json& spec, std::size_t dimension) {
  DriftSpec out;
  const auto d = static_cast<Eigen::Index>(dimension);
  out.offset = Vector::Zero(d);
  out.amplitude = Vector::Zero(d);
  const std::string kind = field<std::string>(spec, "kind", "zero");
  if (kind == "zero") return out;
  if (kind == "constant") {
    out.kind = Kind::kConstant;
    out.offset = vector_of(required(spec, "value"), dimension, "drift value");
    return out;
  }
  if (kind == "sine") {
    out.kind = Kind::kSine;
    out.amplitude = vector_of(required(spec, "amplitude"), dimension, "drift amplitude");
    out.frequency = field<double>(spec, "frequency", 1.0);
    if (spec.contains("offset")) out.offset = vector_of(spec.at("offset"), dimension, "drift offset");
    return out;
  }
  throw InvalidInput("drift kind must be zero, constant or sine (got '" + kind + "')");
}

bool DriftSpec::is_zero() const noexcept {
  return kind == Kind::kZero || (offset.isZero(0.0) && amplitude.isZero(0.0));
}

Vector DriftSpec::operator()(double t) const {
  if (kind == Kind::kSine) return offset + std::sin(2.0 * std::numbers::pi * frequency * t) * amplitude;
  return offset;
}

DriftPath DriftSpec::sample(double horizon, double dt) const {
  if (kind != Kind::kSine) return DriftPath::constant(offset);
  return DriftPath::sample(horizon, dt, [this](double t) { return (*this)(t); });
}

std::string construction_name(Construction c) {
  return c == Construction::kExponential ? "exponential" : "binomial";
}

Construction construction_from_name(const std::string& name) {
  if (name == "exponential") return Construction::kExponential;
  if (name == "binomial") return Construction::kBinomial;
  throw InvalidInput("construction must be exponential or binomial (got '" + name + "')");
}

Scenario Scenario::from_json(const Json& document) {
  if (!document.is_object()) throw InvalidInput("scenario must be a JSON object");
  Scenario s;
  s.source = document;
  s.source.erase("alternative");
  s.generator = generator_from_json(required(document, "generator"));
  s.marks = mark_space_from_json(required(document, "marks"));
  s.integrand = integrand_from_json(required(document, "integrand"), s.generator.dimension(),
                                    s.marks.size());
  s.drift = DriftSpec::from_json(document.value("drift", Json::object()), s.generator.dimension());
  s.horizon = field<double>(document, "horizon", 1.0);
  s.dt = field<double>(document, "dt", 0.01);
  s.p = field<double>(document, "p", 2.0);
  s.alpha = field<double>(document, "alpha", 0.25);
  s.q_prime = field<double>(document, "q_prime", 1.0);
  s.samples = field<std::size_t>(document, "samples", 1000);
  s.seed = field<std::uint64_t>(document, "seed", 0);
  s.construction = construction_from_name(field<std::string>(document, "construction", "exponential"));
  s.permutations = field<int>(document, "permutations", 199);
  s.probes = document.contains("probes") ? number_list(document.at("probes"), "probes")
                                         : std::vector<double>{s.horizon};

  if (!(s.horizon > 0.0) || !std::isfinite(s.horizon)) throw InvalidInput("horizon must be positive");
  if (document.contains("reference")) {
    const Json& ref = document.at("reference");
    const std::vector<double> times = number_list(required(ref, "times"), "reference times");
    const Json values = required(ref, "values");
    if (times.empty() || times.front() != 0.0) throw InvalidInput("reference times must start at 0");
    if (!values.is_array() || values.size() != times.size()) {
      throw InvalidInput("reference needs one value per time");
    }
    std::vector<Vector> rest;
    for (std::size_t k = 1; k < times.size(); ++k) {
      rest.push_back(vector_of(values[k], s.generator.dimension(), "reference value"));
    }
    s.reference = PiecewiseConstPath(vector_of(values[0], s.generator.dimension(), "reference value"),
                                     {times.begin() + 1, times.end()}, std::move(rest), s.horizon);
    s.reference_grid = field<unsigned>(ref, "grid", 6);
    if (s.reference_grid < 1) throw InvalidInput("reference grid must be at least 1");
  }
  if (!(s.dt > 0.0) || s.dt > s.horizon) throw InvalidInput("dt must lie in (0, horizon]");
  if (!(s.p > 1.0) || s.p > 2.0) throw InvalidInput("p must lie in (1, 2]");
  if (!(s.alpha > 0.0)) throw InvalidInput("alpha must be positive");
  if (!(s.q_prime > 0.0) || s.q_prime > s.p) throw InvalidInput("q_prime must lie in (0, p]");
  if (s.samples < 2) throw InvalidInput("samples must be at least 2");
  if (s.permutations < 99) throw InvalidInput("permutations must be at least 99");
  if (s.probes.empty()) throw InvalidInput("probes must be nonempty");
  for (double t : s.probes) {
    if (!(t > 0.0) || t > s.horizon) throw InvalidInput("probe times must lie in (0, horizon]");
  }
  if (s.alpha * s.p >= 1.0) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "alpha * p = %.6g must be < 1 (alpha in (0, 1/p))", s.alpha * s.p);
    throw HypothesisError(buf);
  }
  return s;
}

Scenario Scenario::with_seed(std::uint64_t new_seed) const {
  Scenario s = *this;
  s.seed = new_seed;
  s.source["seed"] = new_seed;
  return s;
}

Scenario Scenario::with_construction(Construction c) const {
  Scenario s = *this;
  s.construction = c;
  s.source["construction"] = construction_name(c);
  return s;
}

Scenario Scenario::with_samples(std::size_t n) const {
  if (n < 2) throw InvalidInput("samples must be at least 2");
  Scenario s = *this;
  s.samples = n;
  s.source["samples"] = n;
  return s;
}

Scenario Scenario::with_weights_scaled(double factor) const {
  Json doc = source;
  Json weights = Json::array();
  for (double w : marks.weights()) weights.push_back(w * factor);
  doc["marks"]["weights"] = weights;
  return from_json(doc);
}

Json Scenario::law_signature() const {
  Json sig = source;
  for (const char* key : {"seed", "construction", "samples", "permutations", "alternative"}) {
    sig.erase(key);
  }
  return sig;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string Scenario::digest() const { return fnv1a_hex(source.dump()); }

Json merge_scenario(const Json& base, const Json& overrides) {
  Json out = base;
  out.merge_patch(overrides);
  return out;
}

}  // namespace levyconv
