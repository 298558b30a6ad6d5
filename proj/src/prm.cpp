#include "levyconv/prm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "levyconv/error.hpp"

namespace levyconv {

MarkSpace::MarkSpace() : data_(std::make_shared<const Data>()) {}

MarkSpace::MarkSpace(std::vector<std::string> marks, std::vector<double> weights) {
  if (marks.size() != weights.size()) {
    throw InvalidInput("mark space: " + std::to_string(marks.size()) + " marks but " +
                       std::to_string(weights.size()) + " weights");
  }
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw InvalidInput("mark space: weights must be positive and finite");
    }
  }
  std::vector<std::string> sorted = marks;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidInput("mark space: mark names must be distinct");
  }
  Data data;
  data.total_mass = std::accumulate(weights.begin(), weights.end(), 0.0);
  data.marks = std::move(marks);
  data.weights = std::move(weights);
  data_ = std::make_shared<const Data>(std::move(data));
}

double MarkSpace::mass(const MarkSubset& subset) const {
  double m = 0.0;
  for (std::size_t z : subset) {
    if (z >= size()) throw InvalidInput("mark index " + std::to_string(z) + " out of range");
    m += data_->weights[z];
  }
  return m;
}

MarkSubset MarkSpace::all() const {
  MarkSubset u(size());
  std::iota(u.begin(), u.end(), std::size_t{0});
  return u;
}

MarkSpace MarkSpace::scaled(double factor) const {
  std::vector<double> w = weights();
  for (double& x : w) x *= factor;
  return MarkSpace(marks(), std::move(w));
}

bool MarkSpace::operator==(const MarkSpace& other) const {
  return data_ == other.data_ ||
         (data_->marks == other.data_->marks && data_->weights == other.data_->weights);
}

PrmRealization::PrmRealization(MarkSpace space, double horizon, std::vector<Atom> atoms)
    : space_(std::move(space)), horizon_(horizon), atoms_(std::move(atoms)) {
  if (!(horizon_ > 0.0) || !std::isfinite(horizon_)) {
    throw InvalidInput("realization: horizon must be positive");
  }
  double previous = 0.0;
  for (const Atom& a : atoms_) {
    if (!(a.time > 0.0) || a.time > horizon_) {
      throw InvalidInput("realization: atom time outside (0, T]");
    }
    if (a.time < previous) throw InvalidInput("realization: atom times must be nondecreasing");
    if (a.mark >= space_.size()) throw InvalidInput("realization: mark index out of range");
    previous = a.time;
  }
}

std::span<const Atom> PrmRealization::before(double t) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), t,
                             [](const Atom& a, double v) { return a.time < v; });
  return {atoms_.data(), static_cast<std::size_t>(it - atoms_.begin())};
}

PrmRealization PrmRealization::with_tail(double t, std::vector<Atom> tail) const {
  auto head = before(t);
  std::vector<Atom> atoms(head.begin(), head.end());
  std::stable_sort(tail.begin(), tail.end(),
                   [](const Atom& a, const Atom& b) { return a.time < b.time; });
  for (const Atom& a : tail) {
    if (a.time < t) throw InvalidInput("with_tail: tail atom precedes the cut time");
    atoms.push_back(a);
  }
  return PrmRealization(space_, horizon_, std::move(atoms));
}

namespace {

void check_simulation_input(const MarkSpace& space, double horizon) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw InvalidInput("simulate: horizon must be positive");
  }
  if (space.empty() || !(space.total_mass() > 0.0)) {
    throw InvalidInput("simulate: mark space is empty");
  }
}

}  // namespace

PrmRealization simulate_prm_exponential(const MarkSpace& space, double horizon, Stream& stream) {
  check_simulation_input(space, horizon);
  const double rate = space.total_mass();
  std::vector<Atom> atoms;
  double t = stream.exponential(rate);
  while (t <= horizon) {
    atoms.push_back({t, stream.categorical(space.weights(), rate)});
    t += stream.exponential(rate);
  }
  return PrmRealization(space, horizon, std::move(atoms));
}

PrmRealization simulate_prm_exponential(const MarkSpace& space, double horizon,
                                        std::uint64_t seed) {
  Stream stream(seed);
  return simulate_prm_exponential(space, horizon, stream);
}

PrmRealization simulate_prm_binomial(const MarkSpace& space, double horizon, Stream& stream) {
  check_simulation_input(space, horizon);
  const double rate = space.total_mass();
  const std::uint64_t n = stream.poisson(horizon * rate);
  std::vector<double> times(n);
  // 1 - U is uniform on (0, 1), so times land in (0, T].
  for (double& t : times) t = horizon * (1.0 - stream.uniform());
  std::sort(times.begin(), times.end());
  std::vector<Atom> atoms;
  atoms.reserve(n);
  for (double t : times) atoms.push_back({t, stream.categorical(space.weights(), rate)});
  return PrmRealization(space, horizon, std::move(atoms));
}

PrmRealization simulate_prm_binomial(const MarkSpace& space, double horizon, std::uint64_t seed) {
  Stream stream(seed);
  return simulate_prm_binomial(space, horizon, stream);
}

PrmRealization simulate_prm(Construction construction, const MarkSpace& space, double horizon,
                            Stream& stream) {
  return construction == Construction::kExponential
             ? simulate_prm_exponential(space, horizon, stream)
             : simulate_prm_binomial(space, horizon, stream);
}

std::size_t count(const PrmRealization& eta, double a, double b, const MarkSubset& subset) {
  if (!(a >= 0.0) || b < a || b > eta.horizon()) {
    throw InvalidInput("count: interval (a, b] must satisfy 0 <= a <= b <= T");
  }
  std::vector<bool> in_subset(eta.space().size(), false);
  for (std::size_t z : subset) {
    if (z >= in_subset.size()) throw InvalidInput("count: mark index out of range");
    in_subset[z] = true;
  }
  std::size_t n = 0;
  for (const Atom& atom : eta.atoms()) {
    if (atom.time > a && atom.time <= b && in_subset[atom.mark]) ++n;
  }
  return n;
}

double compensator(const MarkSpace& space, double a, double b, const MarkSubset& subset) {
  if (!(a >= 0.0) || b < a) throw InvalidInput("compensator: need 0 <= a <= b");
  return (b - a) * space.mass(subset);
}

}  // namespace levyconv
