#include "negtype/closed_forms.hpp"

#include <bit>
#include <cmath>

namespace negtype {

namespace {

// Standard embedding of K_n into R^{n-1}; n = 1 degrades to a single point
// in R^0 so the K_{m,n} direct sum works for m = 1 or n = 1.
Eigen::MatrixXd simplex_points(int n) {
  if (n == 1) return Eigen::MatrixXd::Zero(1, 0);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const double c_n = std::sqrt(2.0) * (1.0 + std::sqrt(double(n))) / (2.0 * (n - 1));
  const double center = (c_n + inv_sqrt2) / n;
  Eigen::MatrixXd pts = Eigen::MatrixXd::Constant(n, n - 1, -center);
  for (int i = 0; i < n - 1; ++i) pts(i, i) += inv_sqrt2;
  pts.row(n - 1).array() += c_n;
  return pts;
}

}  // namespace

Embedding simplex_embedding(int n) {
  if (n < 2) throw Error(ErrKind::BadParams, "simplex embedding needs n >= 2");
  Embedding e;
  e.points = simplex_points(n);
  e.dim = n - 1;
  return e;
}

double KmnReference::c2_at(double p) const {
  if (p < 0.0) throw Error(ErrKind::BadExponent, "p must be >= 0");
  if (p <= supremal) return 1.0;
  return std::pow(2.0, p / 2.0) *
         std::sqrt(1.0 - 0.5 * (1.0 / m + 1.0 / n));
}

Embedding KmnReference::embedding_at(double p) const {
  if (p < 0.0) throw Error(ErrKind::BadExponent, "p must be >= 0");
  // Direct sum of the two simplex embeddings; the points themselves do not
  // depend on p, and the map is optimal for p >= supremal.
  Eigen::MatrixXd xs = simplex_points(m);
  Eigen::MatrixXd ys = simplex_points(n);
  const int dim = (m - 1) + (n - 1);
  Embedding e;
  e.dim = dim;
  e.points = Eigen::MatrixXd::Zero(m + n, dim);
  e.points.topLeftCorner(m, m - 1) = xs;
  e.points.bottomRightCorner(n, n - 1) = ys;
  return e;
}

KmnReference kmn_reference(int m, int n) {
  if (m < 1 || n < 1 || (m == 1 && n == 1))
    throw Error(ErrKind::BadParams, "K_{m,n} needs m,n >= 1 and not both 1");
  KmnReference ref;
  ref.m = m;
  ref.n = n;
  ref.supremal =
      std::log2(2.0 * m * n / (2.0 * m * n - m - n));
  Eigen::VectorXd xi(m + n);
  xi.head(m).setConstant(1.0 / m);
  xi.tail(n).setConstant(-1.0 / n);
  ref.certificate = make_certificate(xi * xi.transpose());
  return ref;
}

double HammingReference::c2_at(double p) const {
  if (p < 0.0) throw Error(ErrKind::BadExponent, "p must be >= 0");
  if (p <= 1.0) return 1.0;
  return std::pow(double(n), (p - 1.0) / 2.0);
}

HammingReference hamming_reference(int n) {
  if (n < 1) throw Error(ErrKind::BadParams, "Hamming cube needs n >= 1");
  if (n > 20) throw Error(ErrKind::BadParams, "Hamming cube too large");
  HammingReference ref;
  ref.n = n;
  const int size = 1 << n;
  ref.embedding.dim = n;
  ref.embedding.points = Eigen::MatrixXd(size, n);
  for (int x = 0; x < size; ++x)
    for (int k = 0; k < n; ++k)
      ref.embedding.points(x, k) = (x >> (n - 1 - k)) & 1;
  if (n >= 2) {
    Eigen::MatrixXd q(size, size);
    for (int x = 0; x < size; ++x)
      for (int y = 0; y < size; ++y) {
        int h = std::popcount(static_cast<unsigned>(x ^ y));
        q(x, y) = (x == y) ? n - 1.0 : (h == 1 ? -1.0 : (h == n ? 1.0 : 0.0));
      }
    ref.certificate = make_certificate(q);
  }
  return ref;
}

}  // namespace negtype
