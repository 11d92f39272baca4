#include "negtype/certificate.hpp"

#include <cmath>
#include <string>

#include "negtype/kernels.hpp"

namespace negtype {

namespace {

constexpr double kMembershipTol = 1e-8;

kernels::SignSplit weighted_sums(const SemiMetricSpace& X, double p,
                                 const PSDCertificate& cert) {
  const int n = X.n();
  Eigen::MatrixXd w = power_transform(X, p).dist;
  return kernels::sign_split_weighted(w.data(), cert.Q.data(),
                                      static_cast<std::size_t>(n) * n,
                                      cert.sign_eps);
}

}  // namespace

bool in_cone(const Eigen::MatrixXd& Q, std::string* why) {
  const auto n = Q.rows();
  if (Q.cols() != n || n < 1) {
    if (why) *why = "not a square matrix";
    return false;
  }
  const double asym = (Q - Q.transpose()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (Q + Q.transpose()));
  const double norm = std::max(es.eigenvalues().cwiseAbs().maxCoeff(), 0.0);
  if (norm == 0.0) return true;  // zero matrix is in the cone
  if (asym > kMembershipTol * norm) {
    if (why) *why = "not symmetric";
    return false;
  }
  if (es.eigenvalues().minCoeff() < -kMembershipTol * norm) {
    if (why) *why = "not positive semidefinite";
    return false;
  }
  if ((Q * Eigen::VectorXd::Ones(n)).cwiseAbs().maxCoeff() >
      kMembershipTol * norm) {
    if (why) *why = "rows do not sum to zero";
    return false;
  }
  return true;
}

PSDCertificate make_certificate(const Eigen::MatrixXd& Q) {
  std::string why;
  if (!in_cone(Q, &why)) throw Error(ErrKind::NotInCone, "certificate: " + why);
  PSDCertificate cert;
  cert.Q = 0.5 * (Q + Q.transpose());
  const double max_abs = cert.Q.cwiseAbs().maxCoeff();
  cert.sign_eps = 1e-9 * max_abs;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cert.Q);
  const double norm = es.eigenvalues().cwiseAbs().maxCoeff();
  cert.rank = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > kMembershipTol * norm) ++cert.rank;
  return cert;
}

double pos_part(const PSDCertificate& cert) {
  return kernels::sum_positive(cert.Q.data(), cert.Q.size(), cert.sign_eps);
}

double certificate_ratio(const SemiMetricSpace& X, double p,
                         const PSDCertificate& cert) {
  if (cert.Q.rows() != X.n())
    throw Error(ErrKind::BadParams, "certificate size does not match space");
  auto sums = weighted_sums(X, p, cert);
  if (sums.neg >= 0.0) {
    if (sums.pos == 0.0) return 0.0;  // e.g. rank-1 on a 2-point space
    throw Error(ErrKind::ZeroDenominator,
                "no negative off-diagonal mass in certificate");
  }
  return sums.pos / (-sums.neg);
}

double distorted_inequality_slack(const SemiMetricSpace& X, double p, double C,
                                  const PSDCertificate& cert) {
  if (cert.Q.rows() != X.n())
    throw Error(ErrKind::BadParams, "certificate size does not match space");
  auto sums = weighted_sums(X, p, cert);
  return sums.pos + C * C * sums.neg;
}

}  // namespace negtype
