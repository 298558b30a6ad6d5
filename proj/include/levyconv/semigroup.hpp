#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace levyconv {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Symmetric generator A on R^d, stored through its spectral decomposition
/// A = sum_k mu_k e_k e_k^T. The semigroup is S(t) = exp(-tA).
///
/// Eigenvalues are normally nonnegative, giving a contraction semigroup.
/// Negative eigenvalues are accepted so that growing semigroups can be fed to
/// the experiments that must reject them; `contraction()` reports which case
/// holds.
class GeneratorOp {
 public:
  /// Validates orthonormality of `basis` (columns) to 1e-10.
  GeneratorOp(Vector eigenvalues, Matrix basis);

  static GeneratorOp diagonal(const std::vector<double>& mu);
  /// Dirichlet Laplacian on d interior points: mu_k = scale * 4 sin^2(k pi / (2(d+1))).
  static GeneratorOp dirichlet_laplacian_1d(std::size_t d, double scale = 1.0);
  static GeneratorOp zero(std::size_t d);
  static GeneratorOp from_symmetric(const Matrix& a);

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(mu_.size()); }
  const Vector& eigenvalues() const noexcept { return mu_; }
  const Matrix& basis() const noexcept { return basis_; }
  double min_eigenvalue() const noexcept { return mu_.size() ? mu_.minCoeff() : 0.0; }
  bool invertible() const noexcept { return mu_.size() > 0 && mu_.minCoeff() > 0.0; }
  bool contraction() const noexcept { return mu_.size() == 0 || mu_.minCoeff() >= 0.0; }
  bool is_zero() const noexcept { return mu_.isZero(0.0); }

  /// The generator as a dense matrix.
  Matrix matrix() const;

  /// Coordinates in the eigenbasis and back.
  Vector to_modal(const Vector& v) const;
  Vector from_modal(const Vector& w) const;

  /// S(t) v; throws InvalidInput for t < 0.
  Vector apply_S(double t, const Vector& v) const;

  /// A^alpha v. Negative alpha needs an invertible generator (SingularityError).
  Vector apply_power(double alpha, const Vector& v) const;

  /// The matrix of A^alpha.
  Matrix power_matrix(double alpha) const;

  /// ||A^alpha S(t)|| = max_k mu_k^alpha e^{-mu_k t}, for t > 0, alpha >= 0.
  double power_semigroup_norm(double alpha, double t) const;

  /// sup_{0 <= t <= horizon} ||S(t)||.
  double uniform_bound(double horizon) const;

 private:
  void check_dimension(const Vector& v) const;

  Vector mu_;
  Matrix basis_;
  bool diagonal_basis_ = false;
};

/// Sharp constant in ||A^alpha S(t)|| <= C t^{-alpha}: C = (alpha / e)^alpha,
/// the maximum of x^alpha e^{-x} over x >= 0.
double power_semigroup_constant(double alpha);

double norm_E(const Vector& v);
/// ||A^{-beta} v||, beta > 0.
double norm_extrapolation(const GeneratorOp& op, double beta, const Vector& v);
/// ||A^alpha v||, alpha > 0.
double norm_domain(const GeneratorOp& op, double alpha, const Vector& v);

}  // namespace levyconv
