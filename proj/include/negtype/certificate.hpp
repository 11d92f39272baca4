#pragma once

#include <Eigen/Dense>

#include "negtype/space.hpp"

namespace negtype {

// Member of the certificate cone: symmetric PSD with rows summing to zero.
// Entry signs are classified against sign_eps; entries inside the band count
// as zero everywhere.
struct PSDCertificate {
  Eigen::MatrixXd Q;
  double sign_eps = 0.0;
  int rank = 0;
};

// Classifies entries, computes the rank, and checks cone membership
// (min eigenvalue >= -1e-8 * ||Q||, Q1 = 0 within 1e-8 * ||Q||).
// Throws NotInCone on failure.
PSDCertificate make_certificate(const Eigen::MatrixXd& Q);

// Non-throwing membership test.
bool in_cone(const Eigen::MatrixXd& Q, std::string* why = nullptr);

// pos(Q): sum of entries above sign_eps, diagonal included.
double pos_part(const PSDCertificate& cert);

// (sum_{q>0} d^p q) / (-sum_{q<0} d^p q): a certified lower bound on c2^2.
double certificate_ratio(const SemiMetricSpace& X, double p,
                         const PSDCertificate& cert);

// Left-hand side of the distorted negative-type inequality,
// sum_{q>0} d^p q + C^2 sum_{q<0} d^p q. Zero with Q != 0 is a non-trivial
// polygonal equality.
double distorted_inequality_slack(const SemiMetricSpace& X, double p, double C,
                                  const PSDCertificate& cert);

}  // namespace negtype
