#include <doctest.h>

#include <cmath>
#include <numbers>

#include "levyconv/error.hpp"
#include "levyconv/semigroup.hpp"
#include "support.hpp"

using namespace levyconv;

namespace {

GeneratorOp random_generator(Stream& rng, std::size_t d, bool invertible = true) {
  Matrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = 2.0 * rng.uniform() - 1.0;
  }
  Matrix spd = m * m.transpose();
  if (invertible) spd += 0.1 * Matrix::Identity(m.rows(), m.cols());
  return GeneratorOp::from_symmetric(0.5 * (spd + spd.transpose()));
}

Vector random_vector(Stream& rng, std::size_t d) {
  Vector v(static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = 2.0 * rng.uniform() - 1.0;
  return v;
}

}  // namespace

TEST_SUITE("semigroup") {

TEST_CASE("construction validates the eigenbasis") {
  CHECK_THROWS_AS(GeneratorOp(Vector::Ones(2), Matrix::Ones(2, 2)), InvalidInput);
  CHECK_THROWS_AS(GeneratorOp(Vector::Ones(2), Matrix::Identity(3, 3)), InvalidInput);
  Matrix asym(2, 2);
  asym << 1.0, 2.0, 0.0, 1.0;
  CHECK_THROWS_AS(GeneratorOp::from_symmetric(asym), InvalidInput);
}

TEST_CASE("laplacian basis diagonalizes the tridiagonal matrix") {
  const GeneratorOp op = GeneratorOp::dirichlet_laplacian_1d(6, 2.0);
  Matrix tri = Matrix::Zero(6, 6);
  for (int i = 0; i < 6; ++i) {
    tri(i, i) = 4.0;
    if (i > 0) tri(i, i - 1) = tri(i - 1, i) = -2.0;
  }
  CHECK((op.matrix() - tri).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(op.contraction());
  CHECK(op.invertible());
}

TEST_CASE("apply_S on diagonal generator") {
  const GeneratorOp op = GeneratorOp::diagonal({1.0, 2.0});
  const Vector v = Vector::Ones(2);
  CHECK(op.apply_S(0.0, v) == v);
  const Vector w = op.apply_S(0.5, v);
  CHECK(w(0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
  CHECK(w(1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(w(0) == doctest::Approx(0.60653).epsilon(1e-5));
  CHECK(w(1) == doctest::Approx(0.36788).epsilon(1e-5));
  CHECK_THROWS_AS(op.apply_S(-0.1, v), InvalidInput);
  CHECK_THROWS_AS(op.apply_S(0.1, Vector::Ones(3)), InvalidInput);
}

TEST_CASE("semigroup law and contraction") {
  Stream rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const GeneratorOp op = random_generator(rng, 1 + rng.below(5));
    const Vector v = random_vector(rng, op.dimension());
    const double t = 2.0 * rng.uniform();
    const double s = 2.0 * rng.uniform();
    const Vector lhs = op.apply_S(t, op.apply_S(s, v));
    const Vector rhs = op.apply_S(t + s, v);
    CHECK((lhs - rhs).norm() <= 1e-12 * std::max(1.0, v.norm()));
    CHECK(op.apply_S(t, v).norm() <= v.norm() + 1e-14);
  }
  const GeneratorOp op = GeneratorOp::diagonal({0.2, 0.3});
  CHECK((op.apply_S(0.2, op.apply_S(0.3, Vector::Ones(2))) - op.apply_S(0.5, Vector::Ones(2))).norm() < 1e-12);
}

TEST_CASE("uniform bound is one for contraction generators") {
  const GeneratorOp op = GeneratorOp::dirichlet_laplacian_1d(4);
  CHECK(op.uniform_bound(1.0) == 1.0);
  // Measured operator norm over t in [0, 1] never exceeds it and is attained at t = 0.
  double worst = 0.0;
  for (int k = 0; k <= 100; ++k) {
    const double t = k / 100.0;
    Matrix s = op.basis() * (-t * op.eigenvalues().array()).exp().matrix().asDiagonal() * op.basis().transpose();
    worst = std::max(worst, s.operatorNorm());
  }
  CHECK(worst == doctest::Approx(1.0).epsilon(1e-12));
  const GeneratorOp growing = GeneratorOp::diagonal({-0.5, 1.0});
  CHECK_FALSE(growing.contraction());
  CHECK(growing.uniform_bound(1.0) == doctest::Approx(std::exp(0.5)));
}

TEST_CASE("fractional powers") {
  const GeneratorOp op = GeneratorOp::diagonal({4.0});
  CHECK(op.apply_power(0.5, Vector::Ones(1))(0) == doctest::Approx(2.0).epsilon(1e-15));
  Stream rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const GeneratorOp g = random_generator(rng, 1 + rng.below(4));
    const Vector v = random_vector(rng, g.dimension());
    CHECK((g.apply_power(0.0, v) - v).norm() < 1e-13);
    CHECK((g.apply_power(-1.0, g.apply_power(1.0, v)) - v).norm() <= 1e-12 * std::max(1.0, v.norm()) * 10.0);
  }
  const GeneratorOp singular = GeneratorOp::diagonal({0.0, 1.0});
  CHECK_FALSE(singular.invertible());
  CHECK_THROWS_AS(singular.apply_power(-1.0, Vector::Ones(2)), SingularityError);
  CHECK_THROWS_AS(GeneratorOp::zero(2).power_matrix(-0.5), SingularityError);
  CHECK_THROWS_AS(GeneratorOp::diagonal({-1.0, 1.0}).apply_power(0.5, Vector::Ones(2)), InvalidInput);
}

TEST_CASE("power semigroup norm against the sharp constant") {
  const GeneratorOp op = GeneratorOp::diagonal({0.5, 2.0, 7.0});
  CHECK(op.power_semigroup_norm(0.0, 0.3) == doctest::Approx(std::exp(-0.5 * 0.3)));

  // Independent oracle: maximize x^0.4 e^{-x} on a dense grid.
  double best = 0.0;
  for (int k = 1; k <= 200000; ++k) {
    const double x = k * 1e-4;
    best = std::max(best, std::pow(x, 0.4) * std::exp(-x));
  }
  CHECK(best == doctest::Approx(0.4646).epsilon(1e-3 / 0.4646));
  CHECK(power_semigroup_constant(0.4) == doctest::Approx(best).epsilon(1e-9));
  CHECK(power_semigroup_constant(0.4) == doctest::Approx(std::pow(0.4 / std::numbers::e, 0.4)));

  for (double alpha : {0.1, 0.25, 0.4, 0.49, 0.9}) {
    for (double t : {0.01, 0.1, 0.5, 1.0, 3.0}) {
      for (double scale : {0.1, 1.0, 10.0, 1000.0}) {
        const GeneratorOp g = GeneratorOp::dirichlet_laplacian_1d(8, scale);
        CHECK(g.power_semigroup_norm(alpha, t) <=
              power_semigroup_constant(alpha) * std::pow(t, -alpha) * (1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("norms") {
  const GeneratorOp op = GeneratorOp::diagonal({4.0});
  CHECK(norm_E(Vector::Constant(1, -3.0)) == 3.0);
  CHECK(norm_extrapolation(op, 1.0, Vector::Zero(1)) == 0.0);
  CHECK(norm_extrapolation(op, 1.0, Vector::Constant(1, 8.0)) == doctest::Approx(2.0));
  Stream rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const GeneratorOp g = random_generator(rng, 3);
    const Vector v = random_vector(rng, 3);
    for (double alpha : {0.25, 0.5, 1.0}) {
      CHECK(norm_domain(g, alpha, g.apply_power(-alpha, v)) == doctest::Approx(norm_E(v)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(norm_extrapolation(GeneratorOp::zero(1), 1.0, Vector::Ones(1)), SingularityError);
  CHECK_THROWS_AS(norm_extrapolation(op, 0.0, Vector::Ones(1)), InvalidInput);
}

}  // TEST_SUITE
