#include <doctest.h>

#include <cmath>

#include "levyconv/error.hpp"
#include "levyconv/projections.hpp"
#include "levyconv/skorokhod.hpp"
#include "support.hpp"

using namespace levyconv;

namespace {

TimeChange random_time_change(Stream& rng) {
  std::vector<double> t{0.0}, l{0.0};
  const std::size_t k = 1 + rng.below(5);
  std::vector<double> a, b;
  for (std::size_t i = 0; i < k; ++i) {
    a.push_back(rng.uniform());
    b.push_back(rng.uniform());
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t i = 0; i < k; ++i) {
    if (a[i] > t.back() && b[i] > l.back()) {
      t.push_back(a[i]);
      l.push_back(b[i]);
    }
  }
  t.push_back(1.0);
  l.push_back(1.0);
  return TimeChange(t, l);
}

/// Oracle for sup_t |x(t) - y(lambda(t))|: dense sampling plus every preimage of a jump time.
double sampled_sup(const PiecewiseConstPath& x, const PiecewiseConstPath& y, const TimeChange& lambda) {
  double worst = 0.0;
  auto probe = [&](double t) {
    t = std::clamp(t, 0.0, 1.0);
    worst = std::max(worst, (x.at(t) - y.at(lambda(t))).norm());
  };
  for (int k = 0; k <= 20000; ++k) probe(k / 20000.0);
  const TimeChange inv = lambda.inverse();
  for (double s : y.jump_times()) {
    for (double e : {-1e-12, 0.0, 1e-12}) probe(inv(s) + e);
  }
  for (double s : x.jump_times()) {
    for (double e : {-1e-12, 0.0, 1e-12}) probe(s + e);
  }
  return worst;
}

}  // namespace

TEST_SUITE("skorokhod") {

TEST_CASE("time change validation and log norm") {
  CHECK_THROWS_AS(TimeChange({0.0, 0.5, 1.0}, {0.0, 0.5}), InvalidInput);
  CHECK_THROWS_AS(TimeChange({0.0, 0.5, 1.0}, {0.0, 0.5, 0.9}), InvalidInput);
  CHECK_THROWS_AS(TimeChange({0.0, 0.5, 1.0}, {0.0, 0.0, 1.0}), InvalidInput);
  CHECK(lambda_log_norm(TimeChange::identity()) == 0.0);
  const TimeChange l({0.0, 0.5, 1.0}, {0.0, 0.625, 1.0});
  CHECK(lambda_log_norm(l) == doctest::Approx(0.28768).epsilon(1e-5 / 0.28768));
  CHECK(lambda_log_norm(l) == doctest::Approx(std::max(std::log(1.25), -std::log(0.75))).epsilon(1e-15));
  Stream rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const TimeChange r = random_time_change(rng);
    CHECK(lambda_log_norm(r) == doctest::Approx(lambda_log_norm(r.inverse())).epsilon(1e-12));
  }
}

TEST_CASE("sup distance") {
  const auto c = PiecewiseConstPath::constant(Vector::Constant(2, 0.0));
  CHECK(sup_distance(c, c) == 0.0);
  Vector v(2);
  v << 3.0, 4.0;
  CHECK(sup_distance(c, PiecewiseConstPath::constant(v)) == doctest::Approx(5.0));
  CHECK(sup_distance(PiecewiseConstPath::indicator(0.5), PiecewiseConstPath::indicator(0.625)) == 1.0);

  Stream rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = testing::random_step_path(rng, 6);
    const auto y = testing::random_step_path(rng, 6);
    const TimeChange l = random_time_change(rng);
    CHECK(sup_distance(x, y, l) == doctest::Approx(sampled_sup(x, y, l)).epsilon(1e-12));
  }
}

TEST_CASE("d0 upper bound examples") {
  Stream rng(3);
  const auto x = testing::random_step_path(rng, 8);
  const D0Bound self = d0_upper(x, x, 6);
  CHECK(self.bound == 0.0);
  CHECK(lambda_log_norm(self.witness) == 0.0);

  const auto zero = PiecewiseConstPath::constant(Vector::Zero(1));
  const auto c = PiecewiseConstPath::constant(Vector::Constant(1, 0.7));
  CHECK(d0_upper(zero, c, 5).bound == doctest::Approx(0.7));

  const auto a = PiecewiseConstPath::indicator(0.5);
  const auto b = PiecewiseConstPath::indicator(0.625);
  for (unsigned g = 3; g <= 7; ++g) {
    const D0Bound r = d0_upper(a, b, g);
    CHECK(r.bound == doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-12));
    CHECK(r.witness(0.5) == doctest::Approx(0.625).epsilon(1e-15));
    CHECK(r.bound == doctest::Approx(std::max(lambda_log_norm(r.witness), sup_distance(a, b, r.witness))).epsilon(1e-15));
  }
}

TEST_CASE("d0 of two unit jumps matches the closed form") {
  Stream rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const double a = 0.05 + 0.9 * rng.uniform();
    const double b = 0.05 + 0.9 * rng.uniform();
    const double expected = std::max(std::abs(std::log(b / a)), std::abs(std::log((1.0 - b) / (1.0 - a))));
    const D0Bound r = d0_upper(PiecewiseConstPath::indicator(a), PiecewiseConstPath::indicator(b), 4);
    CHECK(r.bound == doctest::Approx(std::min(expected, 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("d0 bound properties on random pairs") {
  Stream rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = testing::random_step_path(rng, 5);
    const auto y = testing::random_step_path(rng, 5);
    double prev = std::numeric_limits<double>::infinity();
    for (unsigned g = 1; g <= 6; ++g) {
      const D0Bound r = d0_upper(x, y, g);
      CHECK(r.bound <= prev);
      CHECK(r.bound <= sup_distance(x, y) + 1e-15);
      CHECK(r.bound >= std::max(lambda_log_norm(r.witness), sup_distance(x, y, r.witness)) - 1e-12);
      if (r.bound == 0.0) CHECK(sup_distance(x, y, r.witness) == 0.0);
      prev = r.bound;
    }
    const double s = d0_symmetrized(x, y, 5);
    CHECK(s == d0_symmetrized(y, x, 5));
    CHECK(s <= sup_distance(x, y));
    CHECK(d0_symmetrized(x, x, 5) == 0.0);
  }
}

TEST_CASE("dyadic projection converges in d0") {
  Stream rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = testing::random_step_path(rng, 10, 0.08);
    for (unsigned n = 2; n <= 8; ++n) {
      const double d = d0_symmetrized(x, dyadic_project(n, x), n + 3);
      CHECK(d < std::ldexp(1.0, 1 - static_cast<int>(n)) + x.max_jump());
      if (n == 8) CHECK(d < 0.05);
    }
  }
}

TEST_CASE("d0 to the dyadic projection matches the aligned-jump map") {
  // Below the smallest jump (0.2) a time change must carry every jump of x onto
  // the matching jump of pi_n x at the next grid point; the chord map through
  // those anchors is then optimal.
  Stream rng(55);
  int exact = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto x = testing::random_step_path(rng, 8, 0.08);
    for (unsigned n = 4; n <= 8; ++n) {
      const double cell = std::ldexp(1.0, -static_cast<int>(n));
      std::vector<double> a{0.0}, b{0.0};
      for (double t : x.jump_times()) {
        a.push_back(t);
        b.push_back(std::ceil(t / cell) * cell);
      }
      a.push_back(1.0);
      b.push_back(1.0);
      double oracle = 0.0;
      for (std::size_t k = 1; k < a.size(); ++k) {
        oracle = std::max(oracle, std::abs(std::log((b[k] - b[k - 1]) / (a[k] - a[k - 1]))));
      }
      const double d = d0_upper(x, dyadic_project(n, x), n + 3).bound;
      CHECK(d <= oracle + 1e-12);
      if (d < 0.2) {
        CHECK(d == doctest::Approx(oracle).epsilon(1e-12));
        ++exact;
      }
    }
  }
  CHECK(exact > 50);
}

TEST_CASE("pairwise matrix and resource limits") {
  Stream rng(6);
  std::vector<PiecewiseConstPath> paths;
  for (int i = 0; i < 4; ++i) paths.push_back(testing::random_step_path(rng, 4));
  const Matrix m = pairwise_d0(paths, 5);
  CHECK(m.diagonal().isZero(0.0));
  CHECK(m == m.transpose());
  CHECK_THROWS_AS(d0_upper(paths[0], paths[1], 31), ResourceError);
  D0Options tight;
  tight.max_cells = 16;
  CHECK_THROWS_AS(d0_upper(paths[0], paths[1], 12, tight), ResourceError);
  const auto other = PiecewiseConstPath::constant(Vector::Zero(2));
  CHECK_THROWS_AS(d0_upper(paths[0], other, 4), InvalidInput);
}

}  // TEST_SUITE
