#include "levyconv/semigroup.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "levyconv/error.hpp"

namespace levyconv {

GeneratorOp::GeneratorOp(Vector eigenvalues, Matrix basis)
    : mu_(std::move(eigenvalues)), basis_(std::move(basis)) {
  const auto d = mu_.size();
  if (basis_.rows() != d || basis_.cols() != d) {
    throw InvalidInput("generator: basis must be d x d for d eigenvalues");
  }
  if (!mu_.allFinite()) throw InvalidInput("generator: eigenvalues must be finite");
  const Matrix gram = basis_.transpose() * basis_;
  if (d > 0 && (gram - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10) {
    throw InvalidInput("generator: eigenbasis is not orthonormal");
  }
  diagonal_basis_ = basis_.isIdentity(0.0);
}

GeneratorOp GeneratorOp::diagonal(const std::vector<double>& mu) {
  const auto d = static_cast<Eigen::Index>(mu.size());
  return GeneratorOp(Eigen::Map<const Vector>(mu.data(), d), Matrix::Identity(d, d));
}

GeneratorOp GeneratorOp::dirichlet_laplacian_1d(std::size_t d, double scale) {
  if (d == 0) throw InvalidInput("laplacian1d: dimension must be positive");
  if (!(scale > 0.0)) throw InvalidInput("laplacian1d: scale must be positive");
  const auto n = static_cast<Eigen::Index>(d);
  const double h = std::numbers::pi / static_cast<double>(d + 1);
  Vector mu(n);
  Matrix basis(n, n);
  const double norm = std::sqrt(2.0 / static_cast<double>(d + 1));
  for (Eigen::Index k = 0; k < n; ++k) {
    const double s = std::sin(0.5 * static_cast<double>(k + 1) * h);
    mu(k) = scale * 4.0 * s * s;
    for (Eigen::Index j = 0; j < n; ++j) {
      basis(j, k) = norm * std::sin(static_cast<double>((j + 1) * (k + 1)) * h);
    }
  }
  return GeneratorOp(std::move(mu), std::move(basis));
}

GeneratorOp GeneratorOp::zero(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  return GeneratorOp(Vector::Zero(n), Matrix::Identity(n, n));
}

GeneratorOp GeneratorOp::from_symmetric(const Matrix& a) {
  if (a.rows() != a.cols()) throw InvalidInput("generator: matrix must be square");
  if (!a.isApprox(a.transpose(), 1e-12)) throw InvalidInput("generator: matrix must be symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
  if (solver.info() != Eigen::Success) throw InvalidInput("generator: eigendecomposition failed");
  return GeneratorOp(solver.eigenvalues(), solver.eigenvectors());
}

Matrix GeneratorOp::matrix() const { return basis_ * mu_.asDiagonal() * basis_.transpose(); }

void GeneratorOp::check_dimension(const Vector& v) const {
  if (v.size() != mu_.size()) {
    throw InvalidInput("generator: vector of size " + std::to_string(v.size()) +
                       " for dimension " + std::to_string(mu_.size()));
  }
}

Vector GeneratorOp::to_modal(const Vector& v) const {
  check_dimension(v);
  return diagonal_basis_ ? v : Vector(basis_.transpose() * v);
}

Vector GeneratorOp::from_modal(const Vector& w) const {
  check_dimension(w);
  return diagonal_basis_ ? w : Vector(basis_ * w);
}

Vector GeneratorOp::apply_S(double t, const Vector& v) const {
  if (!(t >= 0.0)) throw InvalidInput("apply_S: t must be nonnegative");
  Vector w = to_modal(v);
  w.array() *= (-t * mu_.array()).exp();
  return from_modal(w);
}

Vector GeneratorOp::apply_power(double alpha, const Vector& v) const {
  if (alpha < 0.0 && !invertible()) {
    throw SingularityError("apply_power: negative power of a non-invertible generator");
  }
  if (alpha != 0.0 && !contraction()) {
    throw InvalidInput("apply_power: fractional powers need nonnegative eigenvalues");
  }
  Vector w = to_modal(v);
  w.array() *= mu_.array().pow(alpha);
  return from_modal(w);
}

Matrix GeneratorOp::power_matrix(double alpha) const {
  if (alpha < 0.0 && !invertible()) {
    throw SingularityError("power_matrix: negative power of a non-invertible generator");
  }
  return basis_ * mu_.array().pow(alpha).matrix().asDiagonal() * basis_.transpose();
}

double GeneratorOp::power_semigroup_norm(double alpha, double t) const {
  if (!(t > 0.0)) throw InvalidInput("power_semigroup_norm: t must be positive");
  if (!(alpha >= 0.0)) throw InvalidInput("power_semigroup_norm: alpha must be nonnegative");
  double best = 0.0;
  for (Eigen::Index k = 0; k < mu_.size(); ++k) {
    const double m = mu_(k);
    if (m < 0.0) throw InvalidInput("power_semigroup_norm: needs nonnegative eigenvalues");
    best = std::max(best, std::pow(m, alpha) * std::exp(-m * t));
  }
  return best;
}

double GeneratorOp::uniform_bound(double horizon) const {
  if (!(horizon >= 0.0)) throw InvalidInput("uniform_bound: horizon must be nonnegative");
  return contraction() ? 1.0 : std::exp(-min_eigenvalue() * horizon);
}

double power_semigroup_constant(double alpha) {
  if (!(alpha >= 0.0)) throw InvalidInput("power_semigroup_constant: alpha must be nonnegative");
  if (alpha == 0.0) return 1.0;
  return std::pow(alpha / std::numbers::e, alpha);
}

double norm_E(const Vector& v) { return v.norm(); }

double norm_extrapolation(const GeneratorOp& op, double beta, const Vector& v) {
  if (!(beta > 0.0)) throw InvalidInput("norm_extrapolation: beta must be positive");
  if (!op.invertible()) throw SingularityError("norm_extrapolation: generator not invertible");
  return op.apply_power(-beta, v).norm();
}

double norm_domain(const GeneratorOp& op, double alpha, const Vector& v) {
  if (!(alpha > 0.0)) throw InvalidInput("norm_domain: alpha must be positive");
  if (!op.invertible()) throw SingularityError("norm_domain: generator not invertible");
  return op.apply_power(alpha, v).norm();
}

}  // namespace levyconv
