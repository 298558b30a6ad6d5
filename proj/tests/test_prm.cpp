#include <doctest.h>

#include <cmath>
#include <numeric>

#include "levyconv/error.hpp"
#include "levyconv/prm.hpp"
#include "levyconv/stats.hpp"
#include "support.hpp"

using namespace levyconv;

namespace {

bool same_atoms(const PrmRealization& a, const PrmRealization& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.atoms()[i].time != b.atoms()[i].time || a.atoms()[i].mark != b.atoms()[i].mark) return false;
  }
  return true;
}

std::vector<std::uint64_t> counts(Construction c, const MarkSpace& space, double a, double b,
                                  const MarkSubset& u, std::size_t n, std::uint64_t seed) {
  std::vector<std::uint64_t> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    Stream s(seed, i);
    out[i] = count(simulate_prm(c, space, 1.0, s), a, b, u);
  }
  return out;
}

}  // namespace

TEST_SUITE("prm") {

TEST_CASE("mark space validation") {
  CHECK_THROWS_AS(MarkSpace({"a", "b"}, {1.0}), InvalidInput);
  CHECK_THROWS_AS(MarkSpace({"a"}, {-1.0}), InvalidInput);
  CHECK_THROWS_AS(MarkSpace({"a", "a"}, {1.0, 1.0}), InvalidInput);
  const MarkSpace z({"a", "b", "c"}, {0.5, 1.0, 1.5});
  CHECK(z.total_mass() == doctest::Approx(3.0));
  CHECK(z.mass({0, 2}) == doctest::Approx(2.0));
  CHECK(z.mass({}) == 0.0);
}

TEST_CASE("realization validation") {
  const MarkSpace z = testing::two_marks();
  CHECK_THROWS_AS(PrmRealization(z, 1.0, {{0.0, 0}}), InvalidInput);
  CHECK_THROWS_AS(PrmRealization(z, 1.0, {{1.5, 0}}), InvalidInput);
  CHECK_THROWS_AS(PrmRealization(z, 1.0, {{0.5, 2}}), InvalidInput);
  CHECK_THROWS_AS(PrmRealization(z, 1.0, {{0.6, 0}, {0.5, 1}}), InvalidInput);
  CHECK_NOTHROW(PrmRealization(z, 1.0, {{1.0, 1}}));
}

TEST_CASE("same seed gives identical realizations for both constructions") {
  const MarkSpace z({"a", "b", "c"}, {2.0, 0.5, 1.0});
  for (std::uint64_t seed : {0ULL, 1ULL, 987654321ULL}) {
    CHECK(same_atoms(simulate_prm_exponential(z, 2.0, seed), simulate_prm_exponential(z, 2.0, seed)));
    CHECK(same_atoms(simulate_prm_binomial(z, 2.0, seed), simulate_prm_binomial(z, 2.0, seed)));
  }
  CHECK_FALSE(same_atoms(simulate_prm_exponential(z, 2.0, 1), simulate_prm_exponential(z, 2.0, 2)));
}

TEST_CASE("count and compensator on fixed atoms") {
  const MarkSpace z = testing::two_marks();
  const PrmRealization empty(z, 1.0, {});
  CHECK(count(empty, 0.0, 1.0, z.all()) == 0);
  CHECK(count(empty, 0.2, 0.4, {1}) == 0);

  const PrmRealization eta(z, 1.0, {{0.3, 0}, {0.7, 1}});
  CHECK(count(eta, 0.0, 0.5, {0}) == 1);
  CHECK(count(eta, 0.0, 0.5, {1}) == 0);
  CHECK(count(eta, 0.3, 0.7, z.all()) == 1);  // (a, b]: 0.3 excluded, 0.7 included
  CHECK_THROWS_AS(count(eta, 0.5, 0.4, {0}), InvalidInput);
  CHECK_THROWS_AS(count(eta, 0.0, 1.5, {0}), InvalidInput);
  CHECK_THROWS_AS(count(eta, 0.0, 0.5, {5}), InvalidInput);

  const MarkSpace three({"a", "b"}, {1.0, 2.0});
  CHECK(compensator(three, 0.4, 0.4, three.all()) == 0.0);
  CHECK(compensator(three, 0.0, 0.5, three.all()) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(compensator(three, 0.0, 0.5, {}) == 0.0);
}

TEST_CASE("count is additive over adjacent intervals") {
  const MarkSpace z({"a", "b", "c"}, {3.0, 1.0, 2.0});
  for (std::uint64_t i = 0; i < 200; ++i) {
    Stream s(42, i);
    const PrmRealization eta = simulate_prm(i % 2 ? Construction::kBinomial : Construction::kExponential,
                                            z, 1.0, s);
    const double a = 0.3 * s.uniform();
    const double b = a + (1.0 - a) * s.uniform();
    const double c = b + (1.0 - b) * s.uniform();
    for (const MarkSubset& u : {MarkSubset{0}, MarkSubset{1, 2}, z.all()}) {
      CHECK(count(eta, a, b, u) + count(eta, b, c, u) == count(eta, a, c, u));
    }
  }
}

TEST_CASE("mean count matches nu(Z) = 2 within three standard errors") {
  const MarkSpace z = testing::two_marks(1.5, 0.5);
  constexpr std::size_t n = 10000;
  for (Construction c : {Construction::kExponential, Construction::kBinomial}) {
    const auto k = counts(c, z, 0.0, 1.0, z.all(), n, 7);
    const double m = std::accumulate(k.begin(), k.end(), 0.0) / n;
    CHECK(std::abs(m - 2.0) < 3.0 * std::sqrt(2.0 / n));
  }
}

TEST_CASE("tiny intensity yields mostly empty realizations") {
  const MarkSpace z({"a"}, {0.001});
  constexpr std::size_t n = 10000;
  const double p0 = std::exp(-0.001);
  for (Construction c : {Construction::kExponential, Construction::kBinomial}) {
    std::size_t empty = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Stream s(11, i);
      empty += simulate_prm(c, z, 1.0, s).size() == 0;
    }
    const double frac = static_cast<double>(empty) / n;
    CHECK(std::abs(frac - p0) <= 3.0 * std::sqrt(p0 * (1.0 - p0) / n) + 1.0 / n);
  }
}

TEST_CASE("counts on disjoint intervals are uncorrelated") {
  const MarkSpace z = testing::two_marks(2.0, 1.0);
  constexpr std::size_t n = 10000;
  for (Construction c : {Construction::kExponential, Construction::kBinomial}) {
    const auto left = counts(c, z, 0.0, 0.5, z.all(), n, 3);
    const auto right = counts(c, z, 0.5, 1.0, z.all(), n, 3);
    std::vector<double> l(left.begin(), left.end()), r(right.begin(), right.end());
    CHECK(std::abs(correlation(l, r)) < 3.0 / std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("box counts are Poisson for both constructions") {
  const MarkSpace z({"a", "b", "c"}, {1.0, 2.5, 0.5});
  struct Box {
    double a, b;
    MarkSubset u;
  };
  const std::vector<Box> boxes{{0.0, 1.0, {0}}, {0.2, 0.9, {1, 2}}, {0.5, 1.0, z.all()}};
  for (Construction c : {Construction::kExponential, Construction::kBinomial}) {
    for (const Box& box : boxes) {
      const auto k = counts(c, z, box.a, box.b, box.u, 10000, 19);
      const auto r = chi_square_poisson(k, compensator(z, box.a, box.b, box.u));
      CHECK(r.p_value > 0.001);
    }
  }
}

TEST_CASE("constructions agree in law on counts") {
  const MarkSpace z({"a", "b"}, {1.0, 2.0});
  for (double t : {0.25, 0.5, 1.0}) {
    const auto e = counts(Construction::kExponential, z, 0.0, t, {1}, 10000, 5);
    const auto b = counts(Construction::kBinomial, z, 0.0, t, {1}, 10000, 6);
    std::vector<double> ed(e.begin(), e.end()), bd(b.begin(), b.end());
    CHECK(ks_two_sample(ed, bd).p_value > 0.001);
  }
}

TEST_CASE("with_tail keeps history and replaces later atoms") {
  const MarkSpace z = testing::two_marks();
  const PrmRealization eta(z, 1.0, {{0.2, 0}, {0.5, 1}, {0.8, 0}});
  const PrmRealization other = eta.with_tail(0.5, {{0.6, 1}});
  REQUIRE(other.size() == 2);
  CHECK(other.atoms()[0].time == 0.2);
  CHECK(other.atoms()[1].time == 0.6);
  CHECK(eta.before(0.5).size() == 1);
  CHECK(eta.before(0.50000001).size() == 2);
}

}  // TEST_SUITE
