#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <utility>

namespace spinent {

template <typename Scalar>
struct QuadratureRule {
  Eigen::Array<Scalar, Eigen::Dynamic, 1> nodes;
  Eigen::Array<Scalar, Eigen::Dynamic, 1> weights;
};

/*!
 * Gauss-Legendre rule of the given order on [-1, 1].
 *
 * Nodes are the eigenvalues of the symmetric Jacobi matrix of the Legendre
 * recurrence; weights are 2 v_0^2 with v_0 the first eigenvector component
 * (Golub-Welsch). Nodes come out ascending.
 */
template <typename Scalar = double>
QuadratureRule<Scalar> gauss_legendre(int order) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");

  Matrix jacobi = Matrix::Zero(order, order);
  for (int i = 1; i < order; ++i) {
    const Scalar k = Scalar(i);
    const Scalar off = k / std::sqrt(Scalar(4) * k * k - Scalar(1));
    jacobi(i, i - 1) = off;
    jacobi(i - 1, i) = off;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(jacobi);

  QuadratureRule<Scalar> rule;
  rule.nodes = solver.eigenvalues().array();
  rule.weights = Scalar(2) * solver.eigenvectors().row(0).transpose().array().square();
  return rule;
}

/// Maps a rule on [-1, 1] onto [a, b].
template <typename Scalar>
QuadratureRule<Scalar> on_interval(const QuadratureRule<Scalar>& ref, Scalar a, Scalar b) {
  const Scalar half = Scalar(0.5) * (b - a);
  const Scalar mid = Scalar(0.5) * (b + a);
  return {mid + half * ref.nodes, half * ref.weights};
}

}  // namespace spinent
