#include "negtype/classical.hpp"

#include <cmath>

#include "negtype/linalg.hpp"

namespace negtype {

Eigen::MatrixXd projected_power_matrix(const SemiMetricSpace& X, double p) {
  const int n = X.n();
  Eigen::MatrixXd dp = power_transform(X, p).dist;
  Eigen::MatrixXd proj =
      Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  return proj * dp * proj;
}

NegTypeVerdict p_negative_type(const SemiMetricSpace& X, double p, double tol) {
  const int n = X.n();
  Eigen::MatrixXd dp = power_transform(X, p).dist;
  // Work in an explicit basis of the mean-zero subspace so the structural
  // zero eigenvalue of P D P never enters the strictness test.
  Eigen::MatrixXd v = meanzero_basis(n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(v.transpose() * dp * v);

  const double scale = dp.maxCoeff() * n;
  const double thresh = tol * scale;
  const Eigen::VectorXd& lam = es.eigenvalues();
  const double top = lam(n - 2);

  NegTypeVerdict verdict;
  verdict.max_eig = top;
  if (top < -thresh) {
    verdict.status = Status::strict;
    return verdict;
  }
  verdict.status = (top > thresh) ? Status::fails : Status::nonstrict;
  verdict.witness = v * es.eigenvectors().col(n - 2);
  return verdict;
}

SupremalType supremal_negative_type(const SemiMetricSpace& X, double tol,
                                    double cap) {
  SupremalType out;
  out.cap = cap;
  auto has_type = [&X](double p) {
    return p_negative_type(X, p).status != Status::fails;
  };
  if (has_type(cap)) {
    out.at_least_cap = true;
    out.value = cap;
    out.bracket_lo = cap;
    out.bracket_hi = cap;
    return out;
  }
  double lo = 0.0, hi = cap;  // type holds at 0 (equilateral power)
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    (has_type(mid) ? lo : hi) = mid;
  }
  out.bracket_lo = lo;
  out.bracket_hi = hi;
  out.value = 0.5 * (lo + hi);
  return out;
}

double classical_witness_check(const SemiMetricSpace& X, double p,
                               const Eigen::VectorXd& xi) {
  if (xi.size() != X.n())
    throw Error(ErrKind::BadParams, "witness length does not match space");
  if (std::abs(xi.sum()) > 1e-9)
    throw Error(ErrKind::NotMeanZero, "witness coefficients must sum to zero");
  Eigen::MatrixXd dp = power_transform(X, p).dist;
  return xi.dot(dp * xi);
}

}  // namespace negtype
