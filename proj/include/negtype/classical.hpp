#pragma once

#include <Eigen/Dense>
#include <optional>

#include "negtype/space.hpp"

namespace negtype {

enum class Status { strict, nonstrict, fails };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::strict: return "strict";
    case Status::nonstrict: return "nonstrict";
    case Status::fails: return "fails";
  }
  return "?";
}

struct NegTypeVerdict {
  Status status = Status::strict;
  // Mean-zero coefficient vector witnessing a zero or positive value of the
  // form; present whenever status != strict.
  std::optional<Eigen::VectorXd> witness;
  // Largest eigenvalue of the form restricted to the mean-zero subspace.
  double max_eig = 0.0;
};

struct SupremalType {
  double value = 0.0;        // midpoint of the bracket, or the cap
  bool at_least_cap = false;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double cap = 0.0;
};

// P D^(p) P with P = I - 11^T/n; symmetric and annihilates 1.
Eigen::MatrixXd projected_power_matrix(const SemiMetricSpace& X, double p);

NegTypeVerdict p_negative_type(const SemiMetricSpace& X, double p,
                               double tol = 1e-9);

// Bisection on p -> (status != fails); the feasible set is an interval
// [0, supremal] (or all of [0, inf), reported as at_least_cap).
SupremalType supremal_negative_type(const SemiMetricSpace& X,
                                    double tol = 1e-3, double cap = 64.0);

// The quadratic form sum d_ij^p xi_i xi_j; xi must sum to zero.
double classical_witness_check(const SemiMetricSpace& X, double p,
                               const Eigen::VectorXd& xi);

}  // namespace negtype
