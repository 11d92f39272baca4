#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "negtype/errors.hpp"

namespace negtype {

// Finite semi-metric space: symmetric nonnegative distances, zero diagonal,
// strictly positive off the diagonal. The triangle inequality is not assumed
// anywhere.
struct SemiMetricSpace {
  Eigen::MatrixXd dist;
  std::vector<std::string> labels;

  int n() const { return static_cast<int>(dist.rows()); }
  double max_dist() const { return dist.maxCoeff(); }
};

struct GraphSpec {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // unordered, unit weight
};

enum class Family { complete, bipartite, hamming };

// Validates a parsed matrix against the semi-metric invariants. Symmetry is
// accepted up to 1e-9 * max entry and then repaired by averaging; exact inputs
// pass through unchanged.
SemiMetricSpace validate_semimetric(const Eigen::MatrixXd& matrix,
                                    std::vector<std::string> labels = {});

// (X, d^q). Diagonal stays zero (0^0 := 0), so q = 0 gives the equilateral
// space with unit off-diagonal distances.
SemiMetricSpace power_transform(const SemiMetricSpace& X, double q);

SemiMetricSpace shortest_path_metric(const GraphSpec& g);

// complete K_n, bipartite K_{m,n} (cross 1, within parts 2),
// hamming H_n (2^n points in lexicographic order, ell_1 distance).
SemiMetricSpace standard_space(Family family, int m, int n = 0);

inline SemiMetricSpace scaled(const SemiMetricSpace& X, double lambda) {
  return SemiMetricSpace{lambda * X.dist, X.labels};
}

}  // namespace negtype
