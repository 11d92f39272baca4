#pragma once

#include <Eigen/Dense>

namespace negtype {

// Orthonormal basis of the mean-zero subspace: n x (n-1) matrix V with
// V^T V = I and V^T 1 = 0. Columns come from the Householder reflector that
// maps 1 to a multiple of e_n, so the basis is deterministic.
inline Eigen::MatrixXd meanzero_basis(int n) {
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n);
  v(n - 1) += std::sqrt(static_cast<double>(n));
  Eigen::MatrixXd h =
      Eigen::MatrixXd::Identity(n, n) - (2.0 / v.squaredNorm()) * v * v.transpose();
  return h.leftCols(n - 1);
}

// Frobenius projection onto the PSD cone.
inline Eigen::MatrixXd psd_project(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
}

// Frobenius projection onto the NSD cone.
inline Eigen::MatrixXd nsd_project(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  Eigen::VectorXd lam = es.eigenvalues().cwiseMin(0.0);
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
}

// Projection onto the certificate cone {Q psd, Q1 = 0}, given the basis V
// from meanzero_basis: restrict to the mean-zero block, PSD-clip there.
inline Eigen::MatrixXd cone_project(const Eigen::MatrixXd& m,
                                    const Eigen::MatrixXd& v) {
  return v * psd_project(v.transpose() * m * v) * v.transpose();
}

}  // namespace negtype
