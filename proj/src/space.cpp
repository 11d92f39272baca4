#include "negtype/space.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <deque>
#include <string>

namespace negtype {

namespace {

std::vector<std::string> default_labels(int n, const std::string& prefix) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i + 1));
  return labels;
}

std::string bitstring(std::uint32_t x, int n) {
  std::string s(n, '0');
  for (int k = 0; k < n; ++k)
    if (x & (1u << (n - 1 - k))) s[k] = '1';
  return s;
}

}  // namespace

SemiMetricSpace validate_semimetric(const Eigen::MatrixXd& matrix,
                                    std::vector<std::string> labels) {
  const auto n = matrix.rows();
  if (matrix.cols() != n)
    throw Error(ErrKind::ParseError, "distance matrix is not square");
  if (n < 2) throw Error(ErrKind::TooSmall, "need at least 2 points");

  const double max_entry = matrix.cwiseAbs().maxCoeff();
  const double sym_tol = 1e-9 * max_entry;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (matrix(i, i) != 0.0)
      throw Error(ErrKind::NonzeroDiagonal,
                  "nonzero diagonal at index " + std::to_string(i));
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (std::abs(matrix(i, j) - matrix(j, i)) > sym_tol)
        throw Error(ErrKind::AsymmetricInput,
                    "asymmetric entries at (" + std::to_string(i) + "," +
                        std::to_string(j) + ")");
    }
  }

  Eigen::MatrixXd d = 0.5 * (matrix + matrix.transpose());
  for (Eigen::Index i = 0; i < n; ++i) {
    d(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (d(i, j) <= 0.0)
        throw Error(ErrKind::NonpositiveOffDiagonal,
                    "nonpositive distance at (" + std::to_string(i) + "," +
                        std::to_string(j) + ")");
  }

  if (labels.empty())
    labels = default_labels(static_cast<int>(n), "x");
  else if (static_cast<Eigen::Index>(labels.size()) != n)
    throw Error(ErrKind::ParseError, "label count does not match matrix size");
  return SemiMetricSpace{std::move(d), std::move(labels)};
}

SemiMetricSpace power_transform(const SemiMetricSpace& X, double q) {
  if (q < 0.0) throw Error(ErrKind::NegativeExponent, "exponent must be >= 0");
  const int n = X.n();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) d(i, j) = std::pow(X.dist(i, j), q);
  return SemiMetricSpace{std::move(d), X.labels};
}

SemiMetricSpace shortest_path_metric(const GraphSpec& g) {
  const int n = g.n;
  if (n < 2) throw Error(ErrKind::TooSmall, "need at least 2 vertices");
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : g.edges) {
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw Error(ErrKind::ParseError, "edge endpoint out of range");
    if (a == b) throw Error(ErrKind::ParseError, "self-loop in graph");
    adj[a].push_back(b);
    adj[b].push_back(a);
  }

  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  std::vector<int> level(n);
  for (int s = 0; s < n; ++s) {
    std::fill(level.begin(), level.end(), -1);
    level[s] = 0;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int w : adj[v])
        if (level[w] < 0) {
          level[w] = level[v] + 1;
          queue.push_back(w);
        }
    }
    for (int t = 0; t < n; ++t) {
      if (level[t] < 0)
        throw Error(ErrKind::DisconnectedGraph, "graph is not connected");
      d(s, t) = level[t];
    }
  }
  return SemiMetricSpace{std::move(d), default_labels(n, "v")};
}

SemiMetricSpace standard_space(Family family, int m, int n) {
  switch (family) {
    case Family::complete: {
      if (m < 2) throw Error(ErrKind::BadParams, "complete: need n >= 2");
      Eigen::MatrixXd d = Eigen::MatrixXd::Ones(m, m);
      d.diagonal().setZero();
      return SemiMetricSpace{std::move(d), default_labels(m, "u")};
    }
    case Family::bipartite: {
      if (m < 1 || n < 1) throw Error(ErrKind::BadParams, "bipartite: need m,n >= 1");
      if (m == 1 && n == 1)
        throw Error(ErrKind::BadParams, "bipartite: m and n must not both be 1");
      const int total = m + n;
      Eigen::MatrixXd d(total, total);
      for (int i = 0; i < total; ++i)
        for (int j = 0; j < total; ++j) {
          if (i == j)
            d(i, j) = 0.0;
          else if ((i < m) == (j < m))
            d(i, j) = 2.0;  // within a part
          else
            d(i, j) = 1.0;  // across parts
        }
      std::vector<std::string> labels;
      for (int i = 0; i < m; ++i) labels.push_back("u" + std::to_string(i + 1));
      for (int j = 0; j < n; ++j) labels.push_back("v" + std::to_string(j + 1));
      return SemiMetricSpace{std::move(d), std::move(labels)};
    }
    case Family::hamming: {
      if (m < 1) throw Error(ErrKind::BadParams, "hamming: need n >= 1");
      if (m > 20) throw Error(ErrKind::BadParams, "hamming: n too large");
      const int size = 1 << m;
      Eigen::MatrixXd d(size, size);
      std::vector<std::string> labels;
      labels.reserve(size);
      for (int x = 0; x < size; ++x) {
        labels.push_back(bitstring(static_cast<std::uint32_t>(x), m));
        for (int y = 0; y < size; ++y)
          d(x, y) = std::popcount(static_cast<std::uint32_t>(x ^ y));
      }
      return SemiMetricSpace{std::move(d), std::move(labels)};
    }
  }
  throw Error(ErrKind::BadParams, "unknown family");
}

}  // namespace negtype
